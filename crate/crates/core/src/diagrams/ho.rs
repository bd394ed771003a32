use crate::error::{shape, Error, Result};
use crate::exactla::{Field, Matrix, ParamLayout};

use super::premorphism::{PreMorphism, PreSlot};
use super::shape::Diagram;

/// A degree −1 pre-morphism `h` with `Dh = g − f`, admissible at stage `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoHomotopy<F> {
    pub f: PreMorphism<F>,
    pub g: PreMorphism<F>,
    pub h: PreMorphism<F>,
    pub r: i32,
}

impl<F: Field> HoHomotopy<F> {
    pub fn new(f: PreMorphism<F>, g: PreMorphism<F>, h: PreMorphism<F>, r: i32) -> Self {
        HoHomotopy { f, g, h, r }
    }

    pub fn reflexive(f: &PreMorphism<F>, x: &Diagram<F>, y: &Diagram<F>, r: i32) -> Self {
        HoHomotopy { f: f.clone(), g: f.clone(), h: PreMorphism::zero(x, y, -1), r }
    }

    pub fn check(&self, x: &Diagram<F>, y: &Diagram<F>) -> Result<bool> {
        check_ho_homotopy(&self.h, &self.f, &self.g, x, y, self.r)
    }

    /// `h + h'` certifies `f ≃ g'`.
    pub fn then(&self, next: &Self) -> Self {
        assert_eq!(self.g, next.f, "homotopies do not chain");
        HoHomotopy { f: self.f.clone(), g: next.g.clone(), h: self.h.add(&next.h), r: self.r.max(next.r) }
    }

    pub fn reverse(&self) -> Self {
        HoHomotopy { f: self.g.clone(), g: self.f.clone(), h: self.h.neg(), r: self.r }
    }

    /// `a h` certifies `a f ≃ a g` for a ho-morphism `a`.
    pub fn post(&self, a: &PreMorphism<F>, x: &Diagram<F>) -> Self {
        let s = x.shape();
        HoHomotopy { f: a.compose(&self.f, s), g: a.compose(&self.g, s), h: a.compose(&self.h, s), r: self.r }
    }

    /// `h b` certifies `f b ≃ g b` for a ho-morphism `b`.
    pub fn pre(&self, b: &PreMorphism<F>, x: &Diagram<F>) -> Self {
        let s = x.shape();
        HoHomotopy { f: self.f.compose(b, s), g: self.g.compose(b, s), h: self.h.compose(b, s), r: self.r }
    }
}

/// Whether `h` is an admissible stage-`r` homotopy from `f` to `g`.
pub fn check_ho_homotopy<F: Field>(
    h: &PreMorphism<F>,
    f: &PreMorphism<F>,
    g: &PreMorphism<F>,
    x: &Diagram<F>,
    y: &Diagram<F>,
    r: i32,
) -> Result<bool> {
    for (name, m, deg) in [("f", f, 0), ("g", g, 0), ("h", h, -1)] {
        m.check_shape(x, y)?;
        if m.degree != deg {
            return Err(shape(format!("{name} has degree {}, expected {deg}", m.degree)));
        }
    }
    Ok(h.is_admissible(x, y, r) && h.differential(x, y) == g.sub(f))
}

fn as_eqs<F: Field>(fs: &[&PreMorphism<F>]) -> Vec<Matrix<F>> {
    fs.iter().flat_map(|f| f.blocks()).collect()
}

/// Solves `Dh = g − f` for an admissible `h`.
pub fn solve_ho_homotopy<F: Field>(
    f: &PreMorphism<F>,
    g: &PreMorphism<F>,
    x: &Diagram<F>,
    y: &Diagram<F>,
    r: i32,
) -> Option<HoHomotopy<F>> {
    let mut layout = ParamLayout::new();
    let slot = PreSlot::push(&mut layout, x, y, -1, r);
    let target = g.sub(f).blocks();
    let sol = layout.solve(|ms| slot.read(ms, x, y).differential(x, y).blocks(), &target)?;
    Some(HoHomotopy::new(f.clone(), g.clone(), slot.read(&sol, x, y), r))
}

/// ℚ-basis of the admissible pre-morphisms of a degree in `ker D`.
pub fn cycles<F: Field>(x: &Diagram<F>, y: &Diagram<F>, degree: i32, r: i32) -> Vec<PreMorphism<F>> {
    let mut layout = ParamLayout::new();
    let slot = PreSlot::push(&mut layout, x, y, degree, r);
    layout.kernel(|ms| slot.read(ms, x, y).differential(x, y).blocks()).iter().map(|ms| slot.read(ms, x, y)).collect()
}

/// `dim ker D − dim D(degree − 1)` on admissible pre-morphisms: the ℚ-dimension
/// of the homotopy classes of stage-`r` ho-morphisms in degree `degree`.
pub fn homotopy_classes_dim<F: Field>(x: &Diagram<F>, y: &Diagram<F>, degree: i32, r: i32) -> usize {
    let mut layout = ParamLayout::new();
    let slot = PreSlot::push(&mut layout, x, y, degree, r);
    let z = layout.matrix_of(|ms| slot.read(ms, x, y).differential(x, y).blocks());
    let cycles = layout.len() - z.rank();
    let mut below = ParamLayout::new();
    let bslot = PreSlot::push(&mut below, x, y, degree - 1, r);
    let b = below.matrix_of(|ms| bslot.read(ms, x, y).differential(x, y).blocks());
    cycles - b.rank()
}

/// Given `w: X ⇝ Y` and `f: X ⇝ Q`, finds a ho-morphism `g: Y ⇝ Q` and a
/// homotopy `g w ≃ f`, in one linear solve.
pub fn fibrant_lift<F: Field>(
    w: &PreMorphism<F>,
    f: &PreMorphism<F>,
    x: &Diagram<F>,
    y: &Diagram<F>,
    q: &Diagram<F>,
    r: i32,
) -> Result<(PreMorphism<F>, HoHomotopy<F>)> {
    let mut layout = ParamLayout::new();
    let gs = PreSlot::push(&mut layout, y, q, 0, r);
    let hs = PreSlot::push(&mut layout, x, q, -1, r);
    let s = x.shape();
    let eqs = |ms: &[Matrix<F>]| {
        let g = gs.read(ms, y, q);
        let h = hs.read(ms, x, q);
        as_eqs(&[&g.differential(y, q), &h.differential(x, q).add(&g.compose(w, s))])
    };
    let target = as_eqs(&[&PreMorphism::zero(y, q, 1), f]);
    let sol = layout.solve(eqs, &target).ok_or_else(|| Error::Unsolvable("no lift along w".into()))?;
    let g = gs.read(&sol, y, q);
    let h = hs.read(&sol, x, q);
    let gw = g.compose(w, s);
    Ok((g, HoHomotopy::new(gw, f.clone(), h, r)))
}
