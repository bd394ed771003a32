//! Translations, `r`-homotopies, double mapping cylinders, cones and cylinders.

mod cylinder;

pub use cylinder::{cone, cylinder, cylinder_map, double_cylinder, mapping_cylinder, zero_like, Cylinder, DoubleCylinder};

use crate::error::{shape, Result};
use crate::exactla::{Field, Matrix, ParamBlock, ParamLayout, Restriction};
use crate::filtered::{is_er_quis, preserves, FilteredComplex, GradedMap};

/// Filtration shifts of the stage-`r` translation on a complex with `nfilt`
/// filtrations: `r` on the first (weight) filtration, `0` on the others.
pub fn stage_shifts(r: i32, nfilt: usize) -> Vec<i32> {
    (0..nfilt).map(|i| if i == 0 { r } else { 0 }).collect()
}

/// `h: K → L` of degree −1 with `dh + hd = g − f` and
/// `h(F^p K^{n+1}) ⊆ F^{p − r} L^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyCertificate<F> {
    pub f: GradedMap<F>,
    pub g: GradedMap<F>,
    pub h: GradedMap<F>,
    pub r: i32,
}

impl<F: Field> HomotopyCertificate<F> {
    pub fn new(f: GradedMap<F>, g: GradedMap<F>, h: GradedMap<F>, r: i32) -> Self {
        HomotopyCertificate { f, g, h, r }
    }

    /// The zero homotopy from `f` to itself.
    pub fn reflexive(f: &GradedMap<F>, r: i32) -> Self {
        let h = GradedMap::zero(-1, &f.source, &f.target);
        HomotopyCertificate { f: f.clone(), g: f.clone(), h, r }
    }

    /// Checks the chain identity and the filtration shift exactly.
    pub fn check(&self, k: &FilteredComplex<F>, l: &FilteredComplex<F>) -> Result<bool> {
        for (name, m, deg) in [("f", &self.f, 0), ("g", &self.g, 0), ("h", &self.h, -1)] {
            if m.degree != deg || &m.source != k.grading() || &m.target != l.grading() {
                return Err(shape(format!("{name} does not map the given complexes with degree {deg}")));
            }
        }
        let chain = self.h.boundary(k.complex(), l.complex()) == self.g.sub(&self.f);
        let shifts: Vec<i32> = stage_shifts(self.r, l.nfilt()).iter().map(|s| -s).collect();
        Ok(chain && preserves(&self.h, k, l, &shifts))
    }

    /// `h + h'` certifies `f ≃ g'` from `f ≃ g` and `g ≃ g'`.
    pub fn then(&self, next: &Self) -> Self {
        assert_eq!(self.g, next.f, "homotopies do not chain");
        HomotopyCertificate { f: self.f.clone(), g: next.g.clone(), h: self.h.add(&next.h), r: self.r.max(next.r) }
    }

    /// `−h` certifies `g ≃ f`.
    pub fn reverse(&self) -> Self {
        HomotopyCertificate { f: self.g.clone(), g: self.f.clone(), h: self.h.neg(), r: self.r }
    }

    /// `a h` certifies `a f ≃ a g`.
    pub fn post(&self, a: &GradedMap<F>) -> Self {
        HomotopyCertificate { f: a.compose(&self.f), g: a.compose(&self.g), h: a.compose(&self.h), r: self.r }
    }

    /// `h b` certifies `f b ≃ g b`.
    pub fn pre(&self, b: &GradedMap<F>) -> Self {
        HomotopyCertificate { f: self.f.compose(b), g: self.g.compose(b), h: self.h.compose(b), r: self.r }
    }
}

/// `f: K → L`, `g: L → K` with `gf ≃ 1` and `fg ≃ 1` at stage `r`.
#[derive(Clone, Debug)]
pub struct EquivalenceCertificate<F> {
    pub f: GradedMap<F>,
    pub g: GradedMap<F>,
    /// `gf ≃ 1_K` (either direction is accepted).
    pub on_source: HomotopyCertificate<F>,
    /// `fg ≃ 1_L`.
    pub on_target: HomotopyCertificate<F>,
}

impl<F: Field> EquivalenceCertificate<F> {
    pub fn identity(k: &FilteredComplex<F>, r: i32) -> Self {
        let id = GradedMap::identity(k.grading());
        EquivalenceCertificate {
            f: id.clone(),
            g: id.clone(),
            on_source: HomotopyCertificate::reflexive(&id, r),
            on_target: HomotopyCertificate::reflexive(&id, r),
        }
    }

    pub fn check(&self, k: &FilteredComplex<F>, l: &FilteredComplex<F>) -> Result<bool> {
        let id_k = GradedMap::identity(k.grading());
        let id_l = GradedMap::identity(l.grading());
        let gf = self.g.compose(&self.f);
        let fg = self.f.compose(&self.g);
        let ends = |c: &HomotopyCertificate<F>, comp: &GradedMap<F>, id: &GradedMap<F>| {
            (&c.f == comp && &c.g == id) || (&c.f == id && &c.g == comp)
        };
        Ok(ends(&self.on_source, &gf, &id_k)
            && ends(&self.on_target, &fg, &id_l)
            && self.on_source.check(k, k)?
            && self.on_target.check(l, l)?
            && crate::filtered::is_filtered_morphism(&self.f, k, l)
            && crate::filtered::is_filtered_morphism(&self.g, l, k))
    }

    /// Consequence check: a valid stage-`r` equivalence consists of
    /// `E_r`-quasi-isomorphisms (on the first filtration).
    pub fn check_sr_subset_er(&self, k: &FilteredComplex<F>, l: &FilteredComplex<F>) -> Result<bool> {
        let r = self.on_source.r.max(self.on_target.r).max(0) as u32;
        let valid = self.check(k, l)?;
        Ok(valid && is_er_quis(&self.f, k, l, 0, r) && is_er_quis(&self.g, l, k, 0, r))
    }
}

/// Searches for an `r`-homotopy from `f` to `g` by solving a linear system.
pub fn solve_homotopy<F: Field>(
    f: &GradedMap<F>,
    g: &GradedMap<F>,
    k: &FilteredComplex<F>,
    l: &FilteredComplex<F>,
    r: i32,
    restriction: Restriction,
) -> Option<HomotopyCertificate<F>> {
    let shifts = stage_shifts(r, l.nfilt());
    let mut layout = ParamLayout::new();
    for n in k.complex().degrees() {
        let mut cons = Vec::new();
        for (i, s) in shifts.iter().enumerate() {
            let (a, b) = k.filtration(i).window();
            for p in a - 1..=b + 1 {
                cons.push((k.level(i, p, n), l.level(i, p - s, n - 1)));
            }
        }
        layout.push(ParamBlock::compatible(l.dim(n - 1), k.dim(n), &cons, restriction));
    }
    let as_map = |ms: &[Matrix<F>]| GradedMap::new(-1, k.grading().clone(), l.grading().clone(), ms.to_vec()).expect("shapes");
    let target = g.sub(f);
    let sol = layout.solve(|ms| as_map(ms).boundary(k.complex(), l.complex()).blocks().to_vec(), target.blocks())?;
    Some(HomotopyCertificate::new(f.clone(), g.clone(), as_map(&sol), r))
}

#[cfg(test)]
mod tests;
