mod common;

#[test]
fn moment_order_equivalence() {
    common::moment_order_equivalence().unwrap();
}

#[test]
fn shift_invariance() {
    common::shift_invariance().unwrap();
}

#[test]
fn codec_round_trips() {
    common::codec_round_trips().unwrap();
}

#[test]
fn pruning_is_lossless() {
    common::pruning_lossless().unwrap();
}

#[test]
fn symmetric_order_parity() {
    common::symmetric_parity().unwrap();
}

#[test]
fn construction_order_bounds() {
    common::construction_bounds().unwrap();
}

#[test]
fn exhaustive_up_to_sixteen() {
    common::exhaustive_small(common::EXHAUSTIVE_N).unwrap();
}
