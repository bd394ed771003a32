use crate::error::{shape, Error, Result};
use crate::exactla::{Field, Matrix, ParamBlock, ParamLayout};
use crate::filtered::{preserves, FilteredComplex, GradedMap};
use crate::homotopy::stage_shifts;

use super::shape::{Diagram, ZigzagShape};

/// `λ_n = −(−1)^{n(n+1)/2}`: the sign relating legs to the cone
/// coordinates in which the differential is `(∂f, δf − ∂F)`.
fn lambda(n: i32) -> bool {
    let t = (i64::from(n) * i64::from(n + 1) / 2).rem_euclid(2);
    t == 1
}

fn signed<F: Field>(m: &GradedMap<F>, positive: bool) -> GradedMap<F> {
    if positive {
        m.clone()
    } else {
        m.neg()
    }
}

/// Components `f_i: X_i → Y_i` of degree `n` and legs `F_u: X_i → Y_j` of
/// degree `n − 1`, one per arrow `u: i → j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreMorphism<F> {
    pub degree: i32,
    pub comps: Vec<GradedMap<F>>,
    pub legs: Vec<GradedMap<F>>,
}

impl<F: Field> PreMorphism<F> {
    pub fn new(degree: i32, comps: Vec<GradedMap<F>>, legs: Vec<GradedMap<F>>, x: &Diagram<F>, y: &Diagram<F>) -> Result<Self> {
        let f = PreMorphism { degree, comps, legs };
        f.check_shape(x, y)?;
        Ok(f)
    }

    pub fn check_shape(&self, x: &Diagram<F>, y: &Diagram<F>) -> Result<()> {
        if x.shape() != y.shape() || self.comps.len() != x.shape().len() || self.legs.len() != x.shape().arrows().len() {
            return Err(shape("pre-morphism does not match the diagram shapes"));
        }
        for (i, c) in self.comps.iter().enumerate() {
            if c.degree != self.degree || &c.source != x.vertex(i).grading() || &c.target != y.vertex(i).grading() {
                return Err(shape(format!("component {i} has the wrong shape")));
            }
        }
        for (u, (l, a)) in self.legs.iter().zip(x.shape().arrows()).enumerate() {
            if l.degree != self.degree - 1
                || &l.source != x.vertex(a.source).grading()
                || &l.target != y.vertex(a.target).grading()
            {
                return Err(shape(format!("leg {u} has the wrong shape")));
            }
        }
        Ok(())
    }

    pub fn zero(x: &Diagram<F>, y: &Diagram<F>, degree: i32) -> Self {
        let comps = (0..x.shape().len())
            .map(|i| GradedMap::zero(degree, x.vertex(i).grading(), y.vertex(i).grading()))
            .collect();
        PreMorphism { degree, comps, legs: zero_legs(x, y, degree) }
    }

    pub fn identity(x: &Diagram<F>) -> Self {
        let comps = x.vertices().iter().map(|v| GradedMap::identity(v.grading())).collect();
        PreMorphism { degree: 0, comps, legs: zero_legs(x, x, 0) }
    }

    /// `(f_i, 0)`.
    pub fn strict(x: &Diagram<F>, y: &Diagram<F>, comps: Vec<GradedMap<F>>) -> Self {
        let degree = comps.first().map_or(0, |c| c.degree);
        PreMorphism { degree, comps, legs: zero_legs(x, y, degree) }
    }

    pub fn is_strict(&self) -> bool {
        self.legs.iter().all(GradedMap::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, GradedMap::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, GradedMap::sub)
    }

    pub fn neg(&self) -> Self {
        PreMorphism {
            degree: self.degree,
            comps: self.comps.iter().map(GradedMap::neg).collect(),
            legs: self.legs.iter().map(GradedMap::neg).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        PreMorphism {
            degree: self.degree,
            comps: self.comps.iter().map(|m| m.scale(c)).collect(),
            legs: self.legs.iter().map(|m| m.scale(c)).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&GradedMap<F>, &GradedMap<F>) -> GradedMap<F>) -> Self {
        assert_eq!(self.degree, other.degree, "degrees differ");
        PreMorphism {
            degree: self.degree,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
            legs: self.legs.iter().zip(&other.legs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// `(Df)_i = d f_i − (−1)^n f_i d`,
    /// `(Df)_u = F_u d + (−1)^n d F_u + t_n (f_j φ_u − φ_u f_i)` with
    /// `t_n = (−1)^{n(n−1)/2}`.
    pub fn differential(&self, x: &Diagram<F>, y: &Diagram<F>) -> Self {
        let n = self.degree;
        let comps = self
            .comps
            .iter()
            .enumerate()
            .map(|(i, c)| c.boundary(x.vertex(i).complex(), y.vertex(i).complex()))
            .collect();
        let legs = self
            .legs
            .iter()
            .zip(x.shape().arrows())
            .enumerate()
            .map(|(u, (l, a))| {
                let dl = l.boundary(x.vertex(a.source).complex(), y.vertex(a.target).complex());
                let twist = self.comps[a.target].compose(x.comparison(u)).sub(&y.comparison(u).compose(&self.comps[a.source]));
                signed(&dl, n % 2 == 0).add(&signed(&twist, lambda(n + 1)))
            })
            .collect();
        PreMorphism { degree: n + 1, comps, legs }
    }

    /// `self ∘ f`: components `g_i f_i`, legs
    /// `λ_{a+b}λ_a G_u f_i + (−1)^a λ_{a+b}λ_b g_j F_u` for `a = deg g`,
    /// `b = deg f`; on ho-morphisms `G_u f_i + g_j F_u`.
    pub fn compose(&self, f: &Self, shape: &ZigzagShape) -> Self {
        let (a, b) = (self.degree, f.degree);
        let c = lambda(a + b);
        let comps = self.comps.iter().zip(&f.comps).map(|(g, f)| g.compose(f)).collect();
        let legs = shape
            .arrows()
            .iter()
            .enumerate()
            .map(|(u, arr)| {
                let first = self.legs[u].compose(&f.comps[arr.source]);
                let second = self.comps[arr.target].compose(&f.legs[u]);
                let s1 = c == lambda(a);
                let s2 = (c == lambda(b)) == (a % 2 == 0);
                signed(&first, s1).add(&signed(&second, s2))
            })
            .collect();
        PreMorphism { degree: a + b, comps, legs }
    }

    /// `f^{-1} = (f_i^{-1}, −f_j^{-1} F_u f_i^{-1})` for a degree-0 `f`.
    pub fn invert(&self, shape: &ZigzagShape) -> Result<Self> {
        if self.degree != 0 {
            return Err(shape_err("only degree-0 pre-morphisms are invertible"));
        }
        let inv: Vec<GradedMap<F>> = self
            .comps
            .iter()
            .enumerate()
            .map(|(i, c)| invert_graded(c).ok_or_else(|| Error::NotInvertible(format!("component {i}"))))
            .collect::<Result<_>>()?;
        let legs = shape
            .arrows()
            .iter()
            .zip(&self.legs)
            .map(|(a, l)| inv[a.target].compose(l).compose(&inv[a.source]).neg())
            .collect();
        Ok(PreMorphism { degree: 0, comps: inv, legs })
    }

    /// Components shift `W` by `n r`, legs by `(n − 1) r`; the other
    /// filtrations are preserved; base components are rational.
    pub fn is_admissible(&self, x: &Diagram<F>, y: &Diagram<F>, r: i32) -> bool {
        if self.check_shape(x, y).is_err() {
            return false;
        }
        let n = self.degree;
        let comps = self.comps.iter().enumerate().all(|(i, c)| {
            let (xv, yv) = (x.vertex(i), y.vertex(i));
            preserves(c, xv, yv, &stage_shifts(n * r, yv.nfilt()))
                && (x.shape().kind(i) != super::VertexKind::Base || c.is_rational())
        });
        comps
            && self.legs.iter().zip(x.shape().arrows()).all(|(l, a)| {
                let yv = y.vertex(a.target);
                preserves(l, x.vertex(a.source), yv, &stage_shifts((n - 1) * r, yv.nfilt()))
            })
    }

    /// Degree 0, `Df = 0` and admissible at stage `r`.
    pub fn is_ho_morphism(&self, x: &Diagram<F>, y: &Diagram<F>, r: i32) -> bool {
        self.degree == 0 && self.is_admissible(x, y, r) && self.differential(x, y).is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().chain(&self.legs).all(GradedMap::is_zero)
    }

    /// All blocks, components first.
    pub fn blocks(&self) -> Vec<Matrix<F>> {
        self.comps.iter().chain(&self.legs).flat_map(|m| m.blocks().iter().cloned()).collect()
    }

    /// Whether each component is a quasi-isomorphism.
    pub fn is_levelwise_quasi_iso(&self, x: &Diagram<F>, y: &Diagram<F>) -> bool {
        self.comps.iter().enumerate().all(|(i, c)| c.is_quasi_iso(x.vertex(i).complex(), y.vertex(i).complex()))
    }
}

fn shape_err(m: &str) -> Error {
    shape(m)
}

fn zero_legs<F: Field>(x: &Diagram<F>, y: &Diagram<F>, degree: i32) -> Vec<GradedMap<F>> {
    x.shape()
        .arrows()
        .iter()
        .map(|a| GradedMap::zero(degree - 1, x.vertex(a.source).grading(), y.vertex(a.target).grading()))
        .collect()
}

fn invert_graded<F: Field>(m: &GradedMap<F>) -> Option<GradedMap<F>> {
    if m.degree != 0 || m.source != m.target {
        return None;
    }
    let blocks = m.blocks().iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
    GradedMap::new(0, m.target.clone(), m.source.clone(), blocks).ok()
}

/// Unknown admissible pre-morphism inside a [`ParamLayout`].
#[derive(Clone, Debug)]
pub struct PreSlot {
    pub degree: i32,
    start: usize,
    end: usize,
}

fn constraints<F: Field>(x: &FilteredComplex<F>, y: &FilteredComplex<F>, n: i32, degree: i32, shift: i32) -> Vec<(crate::Subspace<F>, crate::Subspace<F>)> {
    let shifts = stage_shifts(shift, y.nfilt());
    let mut cons = Vec::new();
    for (f, s) in shifts.iter().enumerate() {
        let (a, b) = x.filtration(f).window();
        for p in a - 1..=b + 1 {
            cons.push((x.level(f, p, n), y.level(f, p + s, n + degree)));
        }
    }
    cons
}

impl PreSlot {
    /// Pushes one block per component and leg, source degree by source degree.
    pub fn push<F: Field>(layout: &mut ParamLayout<F>, x: &Diagram<F>, y: &Diagram<F>, degree: i32, r: i32) -> Self {
        let start = layout.blocks().len();
        for i in 0..x.shape().len() {
            let (xv, yv) = (x.vertex(i), y.vertex(i));
            let restriction = x.shape().kind(i).restriction();
            for n in xv.complex().degrees() {
                let cons = constraints(xv, yv, n, degree, degree * r);
                layout.push(ParamBlock::compatible(yv.dim(n + degree), xv.dim(n), &cons, restriction));
            }
        }
        for a in x.shape().arrows() {
            let (xv, yv) = (x.vertex(a.source), y.vertex(a.target));
            let restriction = x.shape().kind(a.target).restriction();
            for n in xv.complex().degrees() {
                let cons = constraints(xv, yv, n, degree - 1, (degree - 1) * r);
                layout.push(ParamBlock::compatible(yv.dim(n + degree - 1), xv.dim(n), &cons, restriction));
            }
        }
        PreSlot { degree, start, end: layout.blocks().len() }
    }

    /// Reads the slot back from assembled blocks.
    pub fn read<F: Field>(&self, ms: &[Matrix<F>], x: &Diagram<F>, y: &Diagram<F>) -> PreMorphism<F> {
        let mut it = ms[self.start..self.end].iter().cloned();
        let mut take = |deg: i32, s: &FilteredComplex<F>, t: &FilteredComplex<F>| {
            let blocks: Vec<Matrix<F>> = it.by_ref().take(s.grading().dims.len()).collect();
            GradedMap::new(deg, s.grading().clone(), t.grading().clone(), blocks).expect("slot shapes")
        };
        let comps = (0..x.shape().len()).map(|i| take(self.degree, x.vertex(i), y.vertex(i))).collect();
        let legs = x
            .shape()
            .arrows()
            .iter()
            .map(|a| take(self.degree - 1, x.vertex(a.source), y.vertex(a.target)))
            .collect();
        PreMorphism { degree: self.degree, comps, legs }
    }
}
