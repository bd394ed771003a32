//! The ℙ¹ model and single-axiom negative controls.

use crate::diagrams::{Diagram, ZigzagShape};
use crate::exactla::{Field, Matrix};
use crate::filtered::{Chain, Complex, FilteredComplex, GradedMap};

use super::axioms::Axiom;
use super::complexes::{hodge_filtration, weight_filtration, MhsComplex};
use super::mhs::{tate, MixedHodgeStructure};

/// The zero structure.
pub fn zero_mhs<F: Field>() -> MixedHodgeStructure<F> {
    MixedHodgeStructure::split(Chain::trivial(0), Chain::trivial(0)).expect("zero structure")
}

/// `H^*(ℙ¹) = ℚ(0) ⊕ ℚ(−1)[−2]` as a complex of MHS with zero differential.
pub fn p1_cohomology<F: Field>() -> MhsComplex<F> {
    MhsComplex::new(0, vec![tate(0), zero_mhs(), tate(1)], vec![Matrix::zeros(0, 1), Matrix::zeros(1, 0)])
        .expect("ℙ¹ cohomology")
}

/// The ℙ¹ mixed Hodge complex: `S_W` of [`p1_cohomology`].
pub fn p1_model<F: Field>() -> Diagram<F> {
    p1_cohomology().to_diagram().expect("ℙ¹ diagram").shift_w()
}

/// An extra class `ℚ(−2)` in degree 4 of the base vertex only, sent to zero.
pub fn mh0_control<F: Field>() -> Diagram<F> {
    let p1 = p1_model::<F>();
    let big = MhsComplex::new(
        0,
        vec![tate(0), zero_mhs(), tate(1), zero_mhs(), tate(2)],
        vec![Matrix::zeros(0, 1), Matrix::zeros(1, 0), Matrix::zeros(0, 1), Matrix::zeros(1, 0)],
    )
    .expect("base complex")
    .to_diagram()
    .expect("base diagram")
    .shift_w();
    let k0 = big.vertex(0).clone();
    let phi = GradedMap::from_fn(0, k0.grading(), p1.vertex(1).grading(), |n| {
        let c = p1.comparison(0).at(n).into_owned();
        if c.shape() == (p1.vertex(1).dim(n), k0.dim(n)) {
            c
        } else {
            Matrix::zeros(p1.vertex(1).dim(n), k0.dim(n))
        }
    });
    Diagram::new(
        p1.shape().clone(),
        vec![k0, p1.vertex(1).clone(), p1.vertex(2).clone()],
        vec![phi, p1.comparison(1).clone()],
    )
    .expect("MH0 control")
}

/// `x → y` in degrees 0, 1, both of `W`-level 0, with `x ∉ F^1 ∋ y`.
fn non_strict_summand<F: Field>() -> Diagram<F> {
    let c = Complex::new(0, vec![1, 1], vec![Matrix::identity(1)]).expect("acyclic pair");
    let w = || weight_filtration(vec![Chain::concentrated(1, 0), Chain::concentrated(1, 0)]);
    let f = hodge_filtration(vec![Chain::concentrated(1, 0), Chain::concentrated(1, 1)]);
    let k0 = FilteredComplex::new(c.clone(), vec![w()]).expect("vertex");
    let k2 = FilteredComplex::new(c, vec![w(), f]).expect("vertex");
    let id = GradedMap::identity(k0.grading());
    Diagram::new(ZigzagShape::zigzag(2).expect("shape"), vec![k0.clone(), k0, k2], vec![id.clone(), id])
        .expect("summand")
}

/// The ℙ¹ model plus an acyclic summand on which `d` is not strict for `F`.
pub fn mh1_control<F: Field>() -> Diagram<F> {
    Diagram::direct_sum(&[&p1_model(), &non_strict_summand()]).expect("MH1 control")
}

/// The ℙ¹ model with `F` moved up one step on degree 2.
pub fn mh2_control<F: Field>() -> Diagram<F> {
    let p1 = p1_model::<F>();
    let k2 = p1.vertex(2).map_filtration(1, |n, c| if n == 2 { c.reindex(1) } else { c.clone() });
    Diagram::new(p1.shape().clone(), vec![p1.vertex(0).clone(), p1.vertex(1).clone(), k2], p1.comparisons().to_vec())
        .expect("MH2 control")
}

/// The control failing exactly `axiom`; the AH controls are `Dec_W` of the
/// MH ones.
pub fn negative_control<F: Field>(axiom: Axiom) -> Diagram<F> {
    match axiom {
        Axiom::Mh0 => mh0_control(),
        Axiom::Mh1 => mh1_control(),
        Axiom::Mh2 => mh2_control(),
        Axiom::Ah0 => mh0_control().decalage_w(),
        Axiom::Ah1 => mh1_control().decalage_w(),
        Axiom::Ah2 => mh2_control().decalage_w(),
    }
}
