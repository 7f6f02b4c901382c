//! Littlewood polynomials and their bipartition view.
//!
//! A [`LittlewoodPoly`] of length `n` is the sign sequence `a_0, ..., a_{n-1}`
//! with every `a_i` equal to `+1` or `-1`. The same object read as a set is a
//! [`Bipartition`] of `[n] = {0, ..., n-1}`: `A` holds the indices carrying `+1`.
//!
//! The order of `f` (the multiplicity of the root `x = 1`) is computed from
//! binomial moments `sum_i a_i C(i, j)`, which equal `f^{(j)}(1) / j!`. The
//! first `j` with a nonzero binomial moment is the order.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};

/// Largest `m` for which [`thue_morse`] materializes `2^m` coefficients.
pub const THUE_MORSE_CAP: u32 = 26;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LittlewoodPoly {
    coeffs: Vec<i8>,
}

impl fmt::Debug for LittlewoodPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LittlewoodPoly(")?;
        for &c in &self.coeffs {
            f.write_str(if c > 0 { "+" } else { "-" })?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for LittlewoodPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.coeffs {
            f.write_str(if c > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl LittlewoodPoly {
    /// Builds a polynomial from a sign sequence; every entry must be `+1` or `-1`.
    pub fn new(coeffs: Vec<i8>) -> Result<Self> {
        if coeffs.is_empty() {
            return invalid("a Littlewood polynomial needs at least one coefficient");
        }
        if let Some(pos) = coeffs.iter().position(|&c| c != 1 && c != -1) {
            return invalid(format!("coefficient {pos} is {}, expected +1 or -1", coeffs[pos]));
        }
        Ok(Self { coeffs })
    }

    /// Parses a string of `+` and `-` characters.
    pub fn from_signs(s: &str) -> Result<Self> {
        let coeffs = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => invalid(format!("unexpected sign character {other:?}")),
            })
            .collect::<Result<Vec<i8>>>()?;
        Self::new(coeffs)
    }

    pub(crate) fn from_vec_unchecked(coeffs: Vec<i8>) -> Self {
        debug_assert!(!coeffs.is_empty() && coeffs.iter().all(|&c| c == 1 || c == -1));
        Self { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeffs(&self) -> &[i8] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i8 {
        self.coeffs[i]
    }

    pub fn into_coeffs(self) -> Vec<i8> {
        self.coeffs
    }

    /// `f(-1) = sum_i a_i (-1)^i`.
    pub fn eval_minus_one(&self) -> i64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn reversal(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self { coeffs: c }
    }

    pub fn negate(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&c| -c).collect() }
    }

    pub fn scale(&self, s: SymmetrySign) -> Self {
        match s {
            SymmetrySign::Plus => self.clone(),
            SymmetrySign::Minus => self.negate(),
        }
    }

    /// `f ∨ g = f(x) + x^{len f} g(x)`.
    pub fn join(&self, other: &Self) -> Self {
        let mut c = Vec::with_capacity(self.len() + other.len());
        c.extend_from_slice(&self.coeffs);
        c.extend_from_slice(&other.coeffs);
        Self { coeffs: c }
    }

    /// `f ∨ -f`, which raises the order by one.
    pub fn double(&self) -> Self {
        self.join(&self.negate())
    }

    /// `f # g = f(x) g(x^{len f})`: `len g` consecutive copies of `f`, the k-th scaled by `g_k`.
    pub fn expanded_product(&self, other: &Self) -> Self {
        let mut c = Vec::with_capacity(self.len() * other.len());
        for &g in &other.coeffs {
            c.extend(self.coeffs.iter().map(|&a| a * g));
        }
        Self { coeffs: c }
    }

    /// `S(f) = f ∨ (s f*)`, of length `2 len f`.
    pub fn symmetrize(&self, s: SymmetrySign) -> Self {
        self.join(&self.reversal().scale(s))
    }

    /// `Some(s)` when `f* = s f`.
    pub fn symmetry(&self) -> Option<SymmetrySign> {
        if self.is_symmetric(SymmetrySign::Plus) {
            Some(SymmetrySign::Plus)
        } else if self.is_symmetric(SymmetrySign::Minus) {
            Some(SymmetrySign::Minus)
        } else {
            None
        }
    }

    pub fn is_symmetric(&self, s: SymmetrySign) -> bool {
        let n = self.len();
        let sv = s.value() as i8;
        (0..n).all(|i| self.coeffs[n - 1 - i] == sv * self.coeffs[i])
    }

    /// Representative with `a_0 = +1`.
    pub fn canonical(&self) -> Self {
        if self.coeffs[0] > 0 {
            self.clone()
        } else {
            self.negate()
        }
    }

    pub fn moment(&self, j: u32, spec: MomentSpec) -> BigInt {
        moment(self, j, spec)
    }

    pub fn order(&self) -> u32 {
        order(self)
    }

    pub fn has_order_at_least(&self, m: u32) -> bool {
        order_at_least(self, m)
    }

    pub fn to_bipartition(&self) -> Bipartition {
        to_bipartition(self)
    }
}

/// A subset `A` of `[n]`; its complement `B` is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    n: usize,
    a: Vec<usize>,
}

impl Bipartition {
    /// `a` is sorted and deduplicated; every element must lie in `[n]`.
    pub fn new(n: usize, a: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n == 0 {
            return invalid("bipartition of an empty range");
        }
        let mut a: Vec<usize> = a.into_iter().collect();
        a.sort_unstable();
        a.dedup();
        if let Some(&x) = a.last() {
            if x >= n {
                return invalid(format!("element {x} outside [{n}]"));
            }
        }
        Ok(Self { n, a })
    }

    /// Same as [`Bipartition::new`] but also requires a witness shape: `n` even and `|A| = n/2`.
    pub fn witness(n: usize, a: impl IntoIterator<Item = usize>) -> Result<Self> {
        let bp = Self::new(n, a)?;
        if n % 2 != 0 {
            return invalid(format!("witness length {n} is odd"));
        }
        if bp.a.len() != n / 2 {
            return invalid(format!("witness has |A| = {} but n/2 = {}", bp.a.len(), n / 2));
        }
        Ok(bp)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> Vec<usize> {
        let mut it = self.a.iter().peekable();
        (0..self.n)
            .filter(|i| {
                if it.peek() == Some(&i) {
                    it.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.a.binary_search(&i).is_ok()
    }

    pub fn complement(&self) -> Self {
        Self { n: self.n, a: self.b() }
    }

    pub fn to_poly(&self) -> LittlewoodPoly {
        from_bipartition(self)
    }

    /// Power sums `sum_{a in A} a^j` and `sum_{b in B} b^j`.
    pub fn power_sums(&self, j: u32) -> (BigInt, BigInt) {
        let sum = |xs: &mut dyn Iterator<Item = usize>| -> BigInt {
            xs.map(|x| BigInt::from(x).pow(j)).fold(BigInt::zero(), |acc, v| acc + v)
        };
        let b = self.b();
        (sum(&mut self.a.iter().copied()), sum(&mut b.into_iter()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MomentKind {
    /// Weights `(i - t)^j`.
    Power,
    /// Weights `C(i - t, j)`, the integer-valued binomial polynomial.
    Binomial,
}

/// Which polynomial family of degree `j` weights the coefficients, and the domain shift `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MomentSpec {
    pub kind: MomentKind,
    pub shift: i64,
}

impl MomentSpec {
    pub const POWER: Self = Self { kind: MomentKind::Power, shift: 0 };
    pub const BINOMIAL: Self = Self { kind: MomentKind::Binomial, shift: 0 };

    pub fn new(kind: MomentKind, shift: i64) -> Self {
        Self { kind, shift }
    }

    /// Exact weight `w_j(i)`.
    pub fn weight(&self, i: i64, j: u32) -> BigInt {
        let x = i - self.shift;
        match self.kind {
            MomentKind::Power => BigInt::from(x).pow(j),
            MomentKind::Binomial => binomial_big(x, j),
        }
    }

    /// `w_j(i)` in `i128`, or `None` on overflow.
    pub fn weight_i128(&self, i: i64, j: u32) -> Option<i128> {
        let x = (i - self.shift) as i128;
        match self.kind {
            MomentKind::Power => {
                let mut acc: i128 = 1;
                for _ in 0..j {
                    acc = acc.checked_mul(x)?;
                }
                Some(acc)
            }
            MomentKind::Binomial => binomial_i128(x, j),
        }
    }
}

/// `C(x, j) = x (x-1) ... (x-j+1) / j!` for any integer `x`.
pub fn binomial_big(x: i64, j: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 0..j as i64 {
        acc *= x - k;
        acc /= k + 1;
    }
    acc
}

/// `C(x, j)` in `i128`; `None` on overflow.
pub fn binomial_i128(x: i128, j: u32) -> Option<i128> {
    let mut acc: i128 = 1;
    for k in 0..j as i128 {
        // acc * (x - k) is divisible by k + 1 because the quotient is C(x, k+1).
        acc = acc.checked_mul(x - k)? / (k + 1);
    }
    Some(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmetrySign {
    Plus,
    Minus,
}

impl SymmetrySign {
    /// `(-1)^m`.
    pub fn for_order(m: u32) -> Self {
        if m % 2 == 0 {
            Self::Plus
        } else {
            Self::Minus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Self::Plus => 1,
            Self::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Self::Plus),
            -1 => Ok(Self::Minus),
            other => invalid(format!("symmetry sign must be +1 or -1, got {other}")),
        }
    }
}

impl fmt::Display for SymmetrySign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Plus => "+1",
            Self::Minus => "-1",
        })
    }
}

pub fn from_bipartition(bp: &Bipartition) -> LittlewoodPoly {
    let mut c = vec![-1i8; bp.n];
    for &i in &bp.a {
        c[i] = 1;
    }
    LittlewoodPoly { coeffs: c }
}

pub fn to_bipartition(f: &LittlewoodPoly) -> Bipartition {
    Bipartition {
        n: f.len(),
        a: f.coeffs.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| i).collect(),
    }
}

/// `sum_i a_i w_j(i)` with exact integers.
pub fn moment(f: &LittlewoodPoly, j: u32, spec: MomentSpec) -> BigInt {
    if let Some(v) = moment_i128(f, j, spec) {
        return BigInt::from(v);
    }
    f.coeffs
        .iter()
        .enumerate()
        .fold(BigInt::zero(), |acc, (i, &c)| {
            let w = spec.weight(i as i64, j);
            if c > 0 {
                acc + w
            } else {
                acc - w
            }
        })
}

fn moment_i128(f: &LittlewoodPoly, j: u32, spec: MomentSpec) -> Option<i128> {
    let mut acc: i128 = 0;
    for (i, &c) in f.coeffs.iter().enumerate() {
        let w = spec.weight_i128(i as i64, j)?;
        acc = if c > 0 { acc.checked_add(w)? } else { acc.checked_sub(w)? };
    }
    Some(acc)
}

/// Binomial moment `sum_i a_i C(i, j)` with `t = 0`, computed incrementally along `i`.
fn binomial_moment_unshifted(f: &LittlewoodPoly, j: u32) -> BigInt {
    let n = f.len();
    let j = j as usize;
    if j >= n {
        return BigInt::zero();
    }
    // Fast path: C(i, j) for i < n grows monotonically; i128 until it would overflow.
    let mut c: i128 = 1; // C(j, j)
    let mut acc: i128 = 0;
    let mut i = j;
    let mut fell_back = None;
    while i < n {
        match if f.coeffs[i] > 0 { acc.checked_add(c) } else { acc.checked_sub(c) } {
            Some(v) => acc = v,
            None => {
                fell_back = Some((i, c));
                break;
            }
        }
        i += 1;
        if i < n {
            match c.checked_mul(i as i128) {
                Some(v) => c = v / (i - j) as i128,
                None => {
                    fell_back = Some((i, c));
                    break;
                }
            }
        }
    }
    let Some((start, _)) = fell_back else {
        return BigInt::from(acc);
    };
    // Slow path resumes at `start` with exact C(start, j).
    let mut big_acc = BigInt::from(acc);
    let mut big_c = binomial_big(start as i64, j as u32);
    for i in start..n {
        if i > start {
            big_c *= i;
            big_c /= i - j;
        }
        if f.coeffs[i] > 0 {
            big_acc += &big_c;
        } else {
            big_acc -= &big_c;
        }
    }
    big_acc
}

/// Largest `m` with `(x - 1)^m | f`.
pub fn order(f: &LittlewoodPoly) -> u32 {
    let mut j = 0;
    while binomial_moment_unshifted(f, j).is_zero() {
        j += 1;
    }
    j
}

pub fn order_at_least(f: &LittlewoodPoly, m: u32) -> bool {
    (0..m).all(|j| binomial_moment_unshifted(f, j).is_zero())
}

/// Index of the first nonvanishing moment under `spec` (the order, for any valid basis).
pub fn first_nonvanishing(f: &LittlewoodPoly, spec: MomentSpec) -> u32 {
    let mut j = 0;
    while moment(f, j, spec).is_zero() {
        j += 1;
    }
    j
}

/// `τ_m = (1-x)(1-x^2)...(1-x^{2^{m-1}})`; the sign at `i` is `(-1)^{popcount(i)}`.
pub fn thue_morse(m: u32) -> Result<LittlewoodPoly> {
    if m > THUE_MORSE_CAP {
        return Err(Error::Resource(format!(
            "thue_morse({m}) would materialize 2^{m} coefficients (cap is m <= {THUE_MORSE_CAP})"
        )));
    }
    let n = 1usize << m;
    Ok(LittlewoodPoly {
        coeffs: (0..n).map(|i| if i.count_ones() % 2 == 0 { 1 } else { -1 }).collect(),
    })
}

/// `|f(-1)|`, used by the parity constraints.
pub fn abs_at_minus_one(f: &LittlewoodPoly) -> u64 {
    f.eval_minus_one().unsigned_abs()
}
