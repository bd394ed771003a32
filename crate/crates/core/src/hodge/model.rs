use crate::diagrams::{
    check_ho_homotopy, factorize, homotopy_classes_dim, solve_ho_homotopy, Diagram, HoHomotopy, PreMorphism, PreSlot,
};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, ParamLayout};
use crate::filtered::{is_er0_quis, is_er_quis, Complex, Filtration, FilteredComplex, GradedMap, W};

use super::axioms::{check, zigzag_transport, HodgeVerdict, Mode};
use super::complexes::MhsComplex;
use super::mhs::{ext, MixedHodgeStructure};

/// `H(K)`: cohomology of every vertex with the induced filtrations, zero
/// differential, and the comparisons induced on cohomology.
pub fn cohomology_diagram<F: Field>(k: &Diagram<F>) -> Result<Diagram<F>> {
    let vertices: Vec<FilteredComplex<F>> = k
        .vertices()
        .iter()
        .map(|v| {
            let c = v.complex();
            let h = Complex::zero_differential(c.lo(), c.degrees().map(|n| c.betti(n)).collect());
            let filtrations = v
                .filtrations()
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    let chains = c.degrees().map(|n| v.cohomology_filtration(i, n)).collect();
                    Filtration::new(f.name.clone(), f.direction, chains)
                })
                .collect();
            FilteredComplex::new(h, filtrations)
        })
        .collect::<Result<_>>()?;
    let comparisons = k
        .shape()
        .arrows()
        .iter()
        .enumerate()
        .map(|(u, a)| {
            let (x, y) = (k.vertex(a.source).complex(), k.vertex(a.target).complex());
            let phi = k.comparison(u);
            GradedMap::from_fn(0, vertices[a.source].grading(), vertices[a.target].grading(), |n| {
                phi.on_cohomology(x, y, n)
            })
        })
        .collect();
    Diagram::new(k.shape().clone(), vertices, comparisons)
}

/// `H^n` of a zero-differential diagram (or of `H(K)`) as a mixed Hodge
/// structure: `W` on the base vertex, `W` and `F` on the last vertex, and the
/// transport through the zig-zag as comparison.
pub fn cohomology_mhs<F: Field>(h: &Diagram<F>, n: i32) -> Result<MixedHodgeStructure<F>> {
    let last = h.shape().len() - 1;
    let (k0, ks) = (h.vertex(0), h.vertex(last));
    let c = zigzag_transport(h, |u| {
        let a = h.shape().arrow(u);
        h.comparison(u).on_cohomology(h.vertex(a.source).complex(), h.vertex(a.target).complex(), n)
    })?
    .ok_or_else(|| Error::NotInvertible(format!("comparison string on H^{n}")))?;
    MixedHodgeStructure::new(k0.cohomology_filtration(W, n), ks.cohomology_filtration(W, n), ks.cohomology_filtration(1, n), c)
}

/// Cohomology of an absolute Hodge complex as a complex of MHS with zero
/// differential.
pub fn cohomology_complex<F: Field>(k: &Diagram<F>) -> Result<MhsComplex<F>> {
    let (lo, hi) = k
        .vertices()
        .iter()
        .fold((i32::MAX, i32::MIN), |(a, b), v| (a.min(v.complex().lo()), b.max(v.complex().hi())));
    let terms: Vec<MixedHodgeStructure<F>> = (lo..=hi).map(|n| cohomology_mhs(k, n)).collect::<Result<_>>()?;
    let diffs = terms.windows(2).map(|w| Matrix::zeros(w[1].dim(), w[0].dim())).collect();
    MhsComplex::new(lo, terms, diffs)
}

/// `σ: H(K) ⇝ K`, `ρ: K ⇝ H(K)` with `ρσ = 1` exactly and a certificate
/// `σρ ≃ 1`, all at stage 0.
#[derive(Clone, Debug)]
pub struct MinimalModel<F> {
    pub h: Diagram<F>,
    pub sigma: PreMorphism<F>,
    pub rho: PreMorphism<F>,
    pub homotopy: HoHomotopy<F>,
}

impl<F: Field> MinimalModel<F> {
    /// Re-verifies every identity against `k`.
    pub fn verify(&self, k: &Diagram<F>) -> Result<bool> {
        let s = k.shape();
        let id = PreMorphism::identity(&self.h);
        let ok = self.sigma.is_ho_morphism(&self.h, k, 0)
            && self.rho.is_ho_morphism(k, &self.h, 0)
            && self.rho.compose(&self.sigma, s) == id
            && self.homotopy.f == self.sigma.compose(&self.rho, s)
            && self.homotopy.g == PreMorphism::identity(k)
            && self.sigma.is_levelwise_quasi_iso(&self.h, k)
            && self.rho.is_levelwise_quasi_iso(k, &self.h);
        Ok(ok && check_ho_homotopy(&self.homotopy.h, &self.homotopy.f, &self.homotopy.g, k, k, 0)?)
    }
}

/// Projections `K^n → H^n` of every vertex, on all of `K^n`.
fn projections<F: Field>(k: &Diagram<F>) -> Vec<Vec<Matrix<F>>> {
    k.vertices()
        .iter()
        .map(|v| v.complex().degrees().map(|n| v.complex().cohomology(n).q.projection.clone()).collect())
        .collect()
}

pub fn minimal_model<F: Field>(k: &Diagram<F>) -> Result<MinimalModel<F>> {
    let h = cohomology_diagram(k)?;
    let s = k.shape();
    let proj = projections(k);
    let section_eqs = |sigma: &PreMorphism<F>| {
        let mut out = sigma.differential(&h, k).blocks();
        for (i, c) in sigma.comps.iter().enumerate() {
            let v = k.vertex(i).complex();
            for (j, n) in v.degrees().enumerate() {
                out.push(&proj[i][j] * &*c.at(n));
            }
        }
        out
    };
    let mut target = PreMorphism::zero(&h, k, 1).blocks();
    for v in k.vertices() {
        for n in v.complex().degrees() {
            target.push(Matrix::identity(v.complex().betti(n)));
        }
    }
    let mut layout = ParamLayout::new();
    let slot = PreSlot::push(&mut layout, &h, k, 0, 0);
    let sol = layout
        .solve(|ms| section_eqs(&slot.read(ms, &h, k)), &target)
        .ok_or_else(|| Error::Inconsistent("no filtered section system".into()))?;
    let sigma = slot.read(&sol, &h, k);

    let mut layout = ParamLayout::new();
    let slot = PreSlot::push(&mut layout, k, &h, 0, 0);
    let eqs = |ms: &[Matrix<F>]| {
        let rho = slot.read(ms, k, &h);
        let mut out = rho.differential(k, &h).blocks();
        out.extend(rho.compose(&sigma, s).blocks());
        out
    };
    let mut target = PreMorphism::zero(k, &h, 1).blocks();
    target.extend(PreMorphism::identity(&h).blocks());
    let sol = layout.solve(eqs, &target).ok_or_else(|| Error::Inconsistent("no retraction of the sections".into()))?;
    let rho = slot.read(&sol, k, &h);

    let sr = sigma.compose(&rho, s);
    let homotopy = solve_ho_homotopy(&sr, &PreMorphism::identity(k), k, k, 0)
        .ok_or_else(|| Error::Inconsistent("σρ is not homotopic to the identity".into()))?;
    Ok(MinimalModel { h, sigma, rho, homotopy })
}

/// Dimensions of one summand `Hom(H^n K, H^n L) ⊕ Ext¹(H^n K, H^{n−1} L)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomsetSummand {
    pub degree: i32,
    pub hom: usize,
    pub ext1: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homset {
    pub summands: Vec<HomsetSummand>,
    /// `dim Ho(K, L)` from homotopy classes of ho-morphisms `H(K) ⇝ H(L)`.
    pub direct: usize,
}

impl Homset {
    pub fn formula(&self) -> usize {
        self.summands.iter().map(|s| s.hom + s.ext1).sum()
    }

    pub fn agrees(&self) -> bool {
        self.formula() == self.direct
    }
}

/// Hom-set between absolute Hodge complexes, per degree from the cohomology
/// structures and directly from ho-morphism classes between the minimal models.
pub fn homset<F: Field>(k: &Diagram<F>, l: &Diagram<F>) -> Result<Homset> {
    let (hk, hl) = (cohomology_diagram(k)?, cohomology_diagram(l)?);
    let (ck, cl) = (cohomology_complex(&hk)?, cohomology_complex(&hl)?);
    let lo = ck.lo.min(cl.lo);
    let hi = (ck.lo + ck.terms.len() as i32).max(cl.lo + cl.terms.len() as i32);
    let term = |c: &MhsComplex<F>, n: i32| {
        let k = n - c.lo;
        if k < 0 || k as usize >= c.terms.len() {
            None
        } else {
            Some(c.terms[k as usize].clone())
        }
    };
    let mut summands = Vec::new();
    for n in lo..=hi {
        let Some(a) = term(&ck, n) else { continue };
        let hom = term(&cl, n).map_or(0, |b| ext(&a, &b, 0).dim);
        let ext1 = term(&cl, n - 1).map_or(0, |b| ext(&a, &b, 1).dim);
        if hom + ext1 > 0 {
            summands.push(HomsetSummand { degree: n, hom, ext1 });
        }
    }
    Ok(Homset { summands, direct: homotopy_classes_dim(&hk, &hl, 0, 0) })
}

/// Verdict for `L` given a levelwise filtered quasi-isomorphism `f: K ⇝ L`
/// (or `L ⇝ K`) and a passing `K`; errors if `f` is not such a map.
pub fn closure_check<F: Field>(
    f: &PreMorphism<F>,
    k: &Diagram<F>,
    l: &Diagram<F>,
    mode: Mode,
) -> Result<HodgeVerdict> {
    let r = mode.stage();
    let ok = f.is_ho_morphism(k, l, 0)
        && f.comps.iter().enumerate().all(|(i, c)| {
            let (a, b) = (k.vertex(i), l.vertex(i));
            if a.nfilt() == 1 {
                is_er_quis(c, a, b, W, r)
            } else {
                is_er0_quis(c, a, b, r)
            }
        });
    if !ok {
        return Err(Error::Inconsistent("not a levelwise filtered quasi-isomorphism".into()));
    }
    check(l, mode)
}

/// Mapping cylinder of a ho-morphism `f: X ⇝ Y` of complexes of MHS (as
/// stage-0 diagrams), read back as a complex of MHS: `F` pulled back through
/// the comparison string.
pub fn carlson_glue<F: Field>(f: &PreMorphism<F>, x: &Diagram<F>, y: &Diagram<F>) -> Result<(Diagram<F>, MhsComplex<F>)> {
    let fac = factorize(f, x, y, 0)?;
    let cyl = fac.diagram().clone();
    let last = cyl.shape().len() - 1;
    let (k0, ks) = (cyl.vertex(0), cyl.vertex(last));
    let c0 = k0.complex();
    let mut terms = Vec::new();
    for n in c0.degrees() {
        let c = zigzag_transport(&cyl, |u| cyl.comparison(u).at(n).into_owned())?
            .ok_or_else(|| Error::NotInvertible(format!("cylinder comparison in degree {n}")))?;
        terms.push(MixedHodgeStructure::new(k0.chain(W, n), ks.chain(W, n), ks.chain(1, n), c)?);
    }
    let mhs = MhsComplex::new(c0.lo(), terms, c0.diffs().to_vec())?;
    Ok((cyl, mhs))
}
