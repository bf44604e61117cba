use relnum::field::{check_ordered_field_axioms, FieldContext};
use relnum::SampleConfig;

#[test]
fn realalgebraic_fifty_samples_pass() {
    let r = check_ordered_field_axioms(FieldContext::RealAlgebraic, &SampleConfig { seed: 0, count: 50 });
    assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
}

#[test]
fn rational_two_hundred_samples_pass() {
    let r = check_ordered_field_axioms(FieldContext::Rational, &SampleConfig { seed: 0, count: 200 });
    assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
}
