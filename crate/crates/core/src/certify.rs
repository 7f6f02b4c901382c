//! Certificates: expression trees over verified LPs whose length and order lower
//! bound follow from the composition rules, without materializing the result.
//!
//! | node | length | order bound |
//! |------|--------|-------------|
//! | leaf | `len f` | exact order of `f` |
//! | join | sum | min |
//! | negate | same | same |
//! | double (`f ∨ -f`) | `2 len` | `+1` |
//! | product (`f # g`) | product | sum |
//! | symmetrize | `2 len` | checked on the materialized result |
//!
//! A placeholder leaf stands for a tabulated `(n, m)` pair and supports the
//! length and order arithmetic only.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::catalog::{find_witness, CatalogRecord};
use crate::codec::{encode_half, expand_half_witness, hex_decode, hex_encode};
use crate::error::{invalid, Error, Result};
use crate::poly::{thue_morse, LittlewoodPoly, MomentSpec, SymmetrySign};

/// Largest length [`materialize`] will build.
pub const DENSE_CAP: u128 = 1 << 26;

#[derive(Clone, Debug)]
pub enum LeafSource {
    Dense,
    ThueMorse(u32),
}

#[derive(Clone, Debug)]
pub enum CertNode {
    Leaf { poly: Arc<LittlewoodPoly>, source: LeafSource },
    Placeholder { n: u128, m: u32 },
    Join(Certificate, Certificate),
    Negate(Certificate),
    Double(Certificate),
    Product(Certificate, Certificate),
    Symmetrize { child: Certificate, sign: SymmetrySign, claimed_order: u32 },
}

#[derive(Clone, Debug)]
pub struct Certificate {
    root: Arc<CertNode>,
    length: u128,
    order_lb: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Join,
    Negate,
    Double,
    Product,
}

fn too_long() -> Error {
    Error::Resource("certificate length exceeds 128 bits".into())
}

impl Certificate {
    pub fn length(&self) -> u128 {
        self.length
    }

    pub fn order_lb(&self) -> u32 {
        self.order_lb
    }

    pub fn root(&self) -> &CertNode {
        &self.root
    }

    /// True when every leaf carries an actual polynomial.
    pub fn is_concrete(&self) -> bool {
        match &*self.root {
            CertNode::Leaf { .. } => true,
            CertNode::Placeholder { .. } => false,
            CertNode::Join(a, b) | CertNode::Product(a, b) => a.is_concrete() && b.is_concrete(),
            CertNode::Negate(c) | CertNode::Double(c) => c.is_concrete(),
            CertNode::Symmetrize { child, .. } => child.is_concrete(),
        }
    }

    fn make(root: CertNode, length: u128, order_lb: u32) -> Self {
        Self { root: Arc::new(root), length, order_lb }
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        let length = self.length.checked_add(other.length).ok_or_else(too_long)?;
        Ok(Self::make(CertNode::Join(self.clone(), other.clone()), length, self.order_lb.min(other.order_lb)))
    }

    pub fn negate(&self) -> Self {
        Self::make(CertNode::Negate(self.clone()), self.length, self.order_lb)
    }

    pub fn double(&self) -> Result<Self> {
        let length = self.length.checked_mul(2).ok_or_else(too_long)?;
        Ok(Self::make(CertNode::Double(self.clone()), length, self.order_lb + 1))
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        let length = self.length.checked_mul(other.length).ok_or_else(too_long)?;
        Ok(Self::make(CertNode::Product(self.clone(), other.clone()), length, self.order_lb + other.order_lb))
    }

    /// `self # self # ... # self` (`k >= 1` factors).
    pub fn power(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return invalid("a #-power needs at least one factor");
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `S(f) = f ∨ s f*`, accepted only when materialization confirms `claimed_order`.
    pub fn symmetrize(&self, sign: SymmetrySign, claimed_order: u32) -> Result<Self> {
        let length = self.length.checked_mul(2).ok_or_else(too_long)?;
        if length > DENSE_CAP || !self.is_concrete() {
            return Err(Error::Resource(format!(
                "symmetrize needs a materializable child (length {length}, cap {DENSE_CAP})"
            )));
        }
        let node = Self::make(CertNode::Symmetrize { child: self.clone(), sign, claimed_order }, length, claimed_order);
        let dense = materialize(&node)?;
        if !dense.has_order_at_least(claimed_order) {
            return Err(Error::Verification(format!(
                "symmetrized node has order {} < claimed {claimed_order}",
                dense.order()
            )));
        }
        Ok(node)
    }
}

/// Leaf whose order bound is the exact order of `poly`.
pub fn certify_leaf(poly: LittlewoodPoly) -> Certificate {
    let order = poly.order();
    let length = poly.len() as u128;
    Certificate::make(CertNode::Leaf { poly: Arc::new(poly), source: LeafSource::Dense }, length, order)
}

/// Leaf for a tabulated `(n, m)`, checked to have length `n` and order at least `m`.
/// The bound recorded is `m`, so the certificate reflects the tabulated claim.
pub fn certify_witness(poly: LittlewoodPoly, n: u128, m: u32) -> Result<Certificate> {
    if poly.len() as u128 != n {
        return Err(Error::Verification(format!("witness for ({n},{m}) has length {}", poly.len())));
    }
    if !poly.has_order_at_least(m) {
        return Err(Error::Verification(format!("witness for ({n},{m}) has order {} < {m}", poly.order())));
    }
    Ok(Certificate::make(CertNode::Leaf { poly: Arc::new(poly), source: LeafSource::Dense }, n, m))
}

pub fn certify_thue_morse(m: u32) -> Result<Certificate> {
    let poly = thue_morse(m)?;
    let length = poly.len() as u128;
    Ok(Certificate::make(CertNode::Leaf { poly: Arc::new(poly), source: LeafSource::ThueMorse(m) }, length, m))
}

/// Arithmetic-only stand-in for a tabulated `(n, m)`.
pub fn placeholder(n: u128, m: u32) -> Certificate {
    Certificate::make(CertNode::Placeholder { n, m }, n, m)
}

pub fn compose(op: Op, certs: &[&Certificate]) -> Result<Certificate> {
    match (op, certs) {
        (Op::Join, [a, b]) => a.join(b),
        (Op::Product, [a, b]) => a.product(b),
        (Op::Negate, [a]) => Ok(a.negate()),
        (Op::Double, [a]) => a.double(),
        _ => invalid(format!("{op:?} does not take {} operands", certs.len())),
    }
}

/// The sign at `index`, found by descending the tree.
pub fn coefficient_at(cert: &Certificate, index: u128) -> Result<i8> {
    if index >= cert.length {
        return invalid(format!("index {index} out of range for length {}", cert.length));
    }
    let mut node = cert;
    let mut i = index;
    let mut sign: i8 = 1;
    loop {
        match &*node.root {
            CertNode::Leaf { poly, .. } => return Ok(sign * poly.coeff(i as usize)),
            CertNode::Placeholder { n, m } => {
                return Err(Error::InvalidInput(format!("placeholder ({n},{m}) has no coefficients")))
            }
            CertNode::Join(a, b) => {
                if i < a.length {
                    node = a;
                } else {
                    i -= a.length;
                    node = b;
                }
            }
            CertNode::Negate(c) => {
                sign = -sign;
                node = c;
            }
            CertNode::Double(c) => {
                if i >= c.length {
                    i -= c.length;
                    sign = -sign;
                }
                node = c;
            }
            CertNode::Product(a, b) => {
                let (q, r) = (i / a.length, i % a.length);
                sign *= coefficient_at(a, r)?;
                i = q;
                node = b;
            }
            CertNode::Symmetrize { child, sign: s, .. } => {
                if i >= child.length {
                    i = 2 * child.length - 1 - i;
                    sign *= s.value() as i8;
                }
                node = child;
            }
        }
    }
}

/// Dense expansion, for lengths up to [`DENSE_CAP`].
pub fn materialize(cert: &Certificate) -> Result<LittlewoodPoly> {
    if cert.length > DENSE_CAP {
        return Err(Error::Resource(format!("length {} exceeds the dense cap {DENSE_CAP}", cert.length)));
    }
    Ok(LittlewoodPoly::from_vec_unchecked(dense(cert)?))
}

fn dense(cert: &Certificate) -> Result<Vec<i8>> {
    Ok(match &*cert.root {
        CertNode::Leaf { poly, .. } => poly.coeffs().to_vec(),
        CertNode::Placeholder { n, m } => {
            return Err(Error::InvalidInput(format!("placeholder ({n},{m}) cannot be materialized")))
        }
        CertNode::Join(a, b) => {
            let mut v = dense(a)?;
            v.extend(dense(b)?);
            v
        }
        CertNode::Negate(c) => dense(c)?.into_iter().map(|x| -x).collect(),
        CertNode::Double(c) => {
            let v = dense(c)?;
            let mut out = v.clone();
            out.extend(v.iter().map(|x| -x));
            out
        }
        CertNode::Product(a, b) => {
            let (f, g) = (dense(a)?, dense(b)?);
            g.iter().flat_map(|&s| f.iter().map(move |&x| s * x)).collect()
        }
        CertNode::Symmetrize { child, sign, .. } => {
            let v = dense(child)?;
            let s = sign.value() as i8;
            let mut out = v.clone();
            out.extend(v.iter().rev().map(|x| s * x));
            out
        }
    })
}

// ---------------------------------------------------------------------------
// Text form

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(f, self, 0)
    }
}

fn write_node(f: &mut fmt::Formatter<'_>, c: &Certificate, depth: usize) -> fmt::Result {
    let pad = "  ".repeat(depth);
    match &*c.root {
        CertNode::Leaf { poly, source } => match source {
            LeafSource::ThueMorse(m) => writeln!(f, "{pad}(thue-morse {m})"),
            LeafSource::Dense => {
                let bp = poly.to_bipartition();
                let half = poly.len() % 2 == 0 && poly.is_symmetric(SymmetrySign::for_order(c.order_lb));
                match half.then(|| encode_half(&bp).ok()).flatten() {
                    Some(hex) => writeln!(f, "{pad}(leaf n={} m={} half={hex})", poly.len(), c.order_lb),
                    None => {
                        let hex = hex_encode(bp.a(), poly.len()).map_err(|_| fmt::Error)?;
                        writeln!(f, "{pad}(leaf n={} m={} hex={hex})", poly.len(), c.order_lb)
                    }
                }
            }
        },
        CertNode::Placeholder { n, m } => writeln!(f, "{pad}(placeholder n={n} m={m})"),
        CertNode::Join(a, b) | CertNode::Product(a, b) => {
            let name = if matches!(&*c.root, CertNode::Join(..)) { "join" } else { "product" };
            writeln!(f, "{pad}({name}")?;
            write_node(f, a, depth + 1)?;
            write_node(f, b, depth + 1)?;
            writeln!(f, "{pad})")
        }
        CertNode::Negate(a) | CertNode::Double(a) => {
            let name = if matches!(&*c.root, CertNode::Negate(..)) { "negate" } else { "double" };
            writeln!(f, "{pad}({name}")?;
            write_node(f, a, depth + 1)?;
            writeln!(f, "{pad})")
        }
        CertNode::Symmetrize { child, sign, claimed_order } => {
            writeln!(f, "{pad}(symmetrize sign={sign} m={claimed_order}")?;
            write_node(f, child, depth + 1)?;
            writeln!(f, "{pad})")
        }
    }
}

/// Parses the text form, re-verifying every leaf.
pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let spaced = text.replace('(', " ( ").replace(')', " ) ");
    let tokens: Vec<&str> = spaced.split_whitespace().collect();
    let mut pos = 0;
    let cert = parse_node(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::Format("trailing tokens after certificate".into()));
    }
    Ok(cert)
}

fn expect<'a>(tokens: &[&'a str], pos: &mut usize) -> Result<&'a str> {
    let t = tokens.get(*pos).copied().ok_or_else(|| Error::Format("unexpected end of certificate".into()))?;
    *pos += 1;
    Ok(t)
}

fn kv<'a>(token: &'a str, key: &str) -> Result<&'a str> {
    token
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| Error::Format(format!("expected {key}=..., found {token:?}")))
}

fn num<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Format(format!("bad number {s:?}")))
}

fn parse_node(tokens: &[&str], pos: &mut usize) -> Result<Certificate> {
    if expect(tokens, pos)? != "(" {
        return Err(Error::Format("expected '('".into()));
    }
    let head = expect(tokens, pos)?;
    let cert = match head {
        "thue-morse" => certify_thue_morse(num(expect(tokens, pos)?)?)?,
        "placeholder" => {
            let n = num(kv(expect(tokens, pos)?, "n")?)?;
            let m = num(kv(expect(tokens, pos)?, "m")?)?;
            placeholder(n, m)
        }
        "leaf" => {
            let n: usize = num(kv(expect(tokens, pos)?, "n")?)?;
            let m: u32 = num(kv(expect(tokens, pos)?, "m")?)?;
            let body = expect(tokens, pos)?;
            let poly = if let Ok(hex) = kv(body, "half") {
                expand_half_witness(hex, n, m)?.to_poly()
            } else {
                let a = hex_decode(kv(body, "hex")?, n)?;
                crate::poly::Bipartition::new(n, a)?.to_poly()
            };
            certify_witness(poly, n as u128, m)?
        }
        "join" | "product" => {
            let a = parse_node(tokens, pos)?;
            let b = parse_node(tokens, pos)?;
            if head == "join" {
                a.join(&b)?
            } else {
                a.product(&b)?
            }
        }
        "negate" => parse_node(tokens, pos)?.negate(),
        "double" => parse_node(tokens, pos)?.double()?,
        "symmetrize" => {
            let sign = match kv(expect(tokens, pos)?, "sign")? {
                "+1" => SymmetrySign::Plus,
                "-1" => SymmetrySign::Minus,
                other => return Err(Error::Format(format!("bad sign {other:?}"))),
            };
            let m = num(kv(expect(tokens, pos)?, "m")?)?;
            parse_node(tokens, pos)?.symmetrize(sign, m)?
        }
        other => return Err(Error::Format(format!("unknown certificate node {other:?}"))),
    };
    if expect(tokens, pos)? != ")" {
        return Err(Error::Format(format!("expected ')' after {head}")));
    }
    Ok(cert)
}

// ---------------------------------------------------------------------------
// The 2^51 construction

/// `(n, m)` leaves of the construction and their #-powers in each component.
pub const STONG_COMPONENTS: [&[((u64, u32), u32)]; 4] = [
    &[((144, 8), 2), ((192, 9), 4)],
    &[((48, 6), 3), ((112, 7), 1), ((192, 9), 3)],
    &[((16, 4), 1), ((112, 7), 2), ((208, 8), 1), ((272, 8), 1), ((192, 9), 2)],
    &[((112, 7), 1), ((208, 8), 4), ((8192, 13), 1)],
];

pub const STONG_LENGTHS: [u128; 4] = [28179280429056, 87668872445952, 418591807635456, 1717359853174784];

#[derive(Clone, Debug)]
pub struct StongCertificate {
    pub components: Vec<Certificate>,
    pub root: Certificate,
}

fn build_stong(leaf: impl Fn(u64, u32) -> Result<Certificate>) -> Result<StongCertificate> {
    let mut components = Vec::new();
    for parts in STONG_COMPONENTS {
        let mut acc: Option<Certificate> = None;
        for &((n, m), k) in parts {
            let p = leaf(n, m)?.power(k)?;
            acc = Some(match acc {
                None => p,
                Some(a) => a.product(&p)?,
            });
        }
        components.push(acc.expect("components are nonempty"));
    }
    let root = components[0].join(&components[1])?.join(&components[2])?.join(&components[3])?;
    for (c, &want) in components.iter().zip(&STONG_LENGTHS) {
        if c.length() != want {
            return Err(Error::Internal(format!("component length {} differs from {want}", c.length())));
        }
    }
    if root.length() != 1u128 << 51 || root.order_lb() < 52 {
        return Err(Error::Internal(format!(
            "construction gives length {} and order bound {}",
            root.length(),
            root.order_lb()
        )));
    }
    Ok(StongCertificate { components, root })
}

/// Builds `a ∨ b ∨ c ∨ d` from witnesses keyed by `(n, m)`. `(8192, 13)` defaults
/// to `τ_13`; any witness failing its `(n, m)` check is reported by key.
pub fn stong_certificate(witnesses: &BTreeMap<(u64, u32), LittlewoodPoly>) -> Result<StongCertificate> {
    let mut leaves: HashMap<(u64, u32), Certificate> = HashMap::new();
    for parts in STONG_COMPONENTS {
        for &((n, m), _) in parts {
            if leaves.contains_key(&(n, m)) {
                continue;
            }
            let cert = match witnesses.get(&(n, m)) {
                Some(p) => certify_witness(p.clone(), n as u128, m)
                    .map_err(|e| Error::Verification(format!("leaf ({n},{m}) rejected: {e}")))?,
                None if (n, m) == (8192, 13) => certify_thue_morse(13)?,
                None => return Err(Error::InvalidInput(format!("no witness supplied for ({n},{m})"))),
            };
            leaves.insert((n, m), cert);
        }
    }
    build_stong(|n, m| Ok(leaves[&(n, m)].clone()))
}

/// Witnesses for every leaf, looked up in a catalog.
pub fn stong_witnesses(records: &[CatalogRecord]) -> Result<BTreeMap<(u64, u32), LittlewoodPoly>> {
    let mut out = BTreeMap::new();
    for parts in STONG_COMPONENTS {
        for &((n, m), _) in parts {
            if (n, m) == (8192, 13) || out.contains_key(&(n, m)) {
                continue;
            }
            let w = find_witness(records, n as usize, m)?
                .ok_or_else(|| Error::InvalidInput(format!("catalog has no witness for ({n},{m})")))?;
            out.insert((n, m), w);
        }
    }
    Ok(out)
}

/// The same construction over placeholder leaves.
pub fn stong_arithmetic() -> Result<StongCertificate> {
    build_stong(|n, m| Ok(placeholder(n as u128, m)))
}

/// Four products of the given `(n, m)` leaves, each of total order `order`,
/// whose lengths sum to `2^(order - 1)`. Each solution lists four lengths, ascending.
pub fn subset_sum_reconstruction(leaves: &[(u64, u32)], order: u32) -> Vec<[u128; 4]> {
    let target: u128 = 1 << (order - 1);
    let mut lengths: Vec<u128> = Vec::new();
    fn rec(leaves: &[(u64, u32)], i: usize, rem: u32, len: u128, target: u128, out: &mut Vec<u128>) {
        if rem == 0 {
            out.push(len);
            return;
        }
        if i == leaves.len() || len > target {
            return;
        }
        let (n, m) = leaves[i];
        let mut l = len;
        let mut used = 0;
        loop {
            rec(leaves, i + 1, rem - used, l, target, out);
            if used + m > rem {
                break;
            }
            match l.checked_mul(n as u128) {
                Some(v) if v <= target => l = v,
                _ => break,
            }
            used += m;
        }
    }
    rec(leaves, 0, order, 1, target, &mut lengths);
    lengths.sort_unstable();
    lengths.dedup();
    let mut pair_sums: HashMap<u128, Vec<(usize, usize)>> = HashMap::new();
    for i in 0..lengths.len() {
        for j in i..lengths.len() {
            let s = lengths[i] + lengths[j];
            if s < target {
                pair_sums.entry(s).or_default().push((i, j));
            }
        }
    }
    let mut out: Vec<[u128; 4]> = Vec::new();
    for (s, left) in &pair_sums {
        if let Some(right) = pair_sums.get(&(target - s)) {
            for &(i, j) in left {
                for &(k, l) in right {
                    let mut q = [lengths[i], lengths[j], lengths[k], lengths[l]];
                    q.sort_unstable();
                    out.push(q);
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// `τ_m^{(m)}(1) = m! · sum_i a_i C(i, m)`, checked against `(-1)^m m! 2^{m(m-1)/2}`.
pub fn tau_moment_check(m: u32) -> Result<BigInt> {
    let tau = thue_morse(m)?;
    let factorial: BigInt = (1..=m).fold(BigInt::one(), |acc, k| acc * k);
    let value = &factorial * tau.moment(m, MomentSpec::BINOMIAL);
    let mut closed = factorial * (BigInt::one() << (m as usize * (m as usize).saturating_sub(1) / 2));
    if m % 2 == 1 {
        closed = -closed;
    }
    if value != closed {
        return Err(Error::Verification(format!("derivative of tau_{m} at 1 is {value}, expected {closed}")));
    }
    debug_assert!(!value.is_zero());
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau(m: u32) -> Certificate {
        certify_thue_morse(m).unwrap()
    }

    #[test]
    fn composition_rules() {
        let t4 = certify_leaf(thue_morse(4).unwrap());
        assert_eq!((t4.length(), t4.order_lb()), (16, 4));
        let sq = placeholder(144, 8).product(&placeholder(144, 8)).unwrap();
        assert_eq!((sq.length(), sq.order_lb()), (20736, 16));
        assert!(sq.length() < 1 << 15);
        let d = tau(2).double().unwrap();
        assert_eq!((d.length(), d.order_lb()), (8, 3));
        assert_eq!(materialize(&d).unwrap(), thue_morse(3).unwrap());
        assert!(compose(Op::Join, &[&d]).is_err());
    }

    #[test]
    fn coefficient_descent() {
        let p = tau(2).product(&tau(2)).unwrap();
        assert_eq!(coefficient_at(&p, 5).unwrap(), 1);
        assert!(coefficient_at(&p, 16).is_err());
        let dense = materialize(&p).unwrap();
        for i in 0..16 {
            assert_eq!(coefficient_at(&p, i).unwrap(), dense.coeff(i as usize));
        }
    }

    #[test]
    fn symmetrize_is_checked() {
        let f = certify_leaf(LittlewoodPoly::from_signs("+-+---").unwrap());
        let s = f.symmetrize(SymmetrySign::Minus, 3).unwrap();
        assert_eq!(s.length(), 12);
        assert!(f.symmetrize(SymmetrySign::Minus, 4).is_err());
        assert_eq!(coefficient_at(&s, 11).unwrap(), -1);
    }

    #[test]
    fn stong_arithmetic_adds_up() {
        let s = stong_arithmetic().unwrap();
        let lens: Vec<u128> = s.components.iter().map(Certificate::length).collect();
        assert_eq!(lens, STONG_LENGTHS);
        assert_eq!(s.root.length(), 2251799813685248);
        assert!(s.root.order_lb() >= 52);
        assert!(lens.iter().all(|l| l % (1u128 << 32) == 0));
        assert!(coefficient_at(&s.root, 0).is_err());
    }

    #[test]
    fn reconstruction_finds_the_construction() {
        let leaves: Vec<(u64, u32)> = STONG_COMPONENTS.iter().flat_map(|c| c.iter().map(|x| x.0)).collect();
        let mut uniq = leaves.clone();
        uniq.sort_unstable();
        uniq.dedup();
        let sols = subset_sum_reconstruction(&uniq, 52);
        assert!(sols.contains(&STONG_LENGTHS));
    }

    #[test]
    fn tau_derivatives() {
        assert_eq!(tau_moment_check(3).unwrap(), BigInt::from(-48));
        assert_eq!(tau_moment_check(1).unwrap(), BigInt::from(-1));
        for m in 0..=12 {
            tau_moment_check(m).unwrap();
        }
    }

    #[test]
    fn text_round_trip() {
        let f = certify_leaf(crate::codec::expand_half_witness("A3C", 20, 3).unwrap().to_poly());
        let c = f.product(&tau(2)).unwrap().join(&tau(3).negate().double().unwrap()).unwrap();
        let text = c.to_string();
        let back = parse_certificate(&text).unwrap();
        assert_eq!(back.to_string(), text);
        assert_eq!((back.length(), back.order_lb()), (c.length(), c.order_lb()));
        assert_eq!(materialize(&back).unwrap(), materialize(&c).unwrap());
        assert!(parse_certificate("(leaf n=20 m=4 half=A3C)").is_err());
    }
}
