use relnum::field::FieldContext;
use relnum::specrel::{check_axioms, Axiom, AxiomSampling, ModelSpec};

#[test]
fn standard_rational_model_satisfies_axioms() {
    let model = ModelSpec::standard(FieldContext::Rational, 3).build().unwrap();
    let r = check_axioms(&model, &Axiom::ALL, &AxiomSampling { seed: 7, samples: 500 });
    assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
}
