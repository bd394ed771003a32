use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::filtered::GradedMap;
use crate::homotopy::{cylinder_map, double_cylinder, zero_like, DoubleCylinder};

use super::ho::HoHomotopy;
use super::premorphism::PreMorphism;
use super::shape::Diagram;

/// Vertexwise double cylinders of ho-morphisms `f: X ⇝ Y`, `g: X ⇝ Z`
/// glued by `ψ_u = [[φ, 0, 0], [−F_u, φ, 0], [G_u, 0, φ]]`.
#[derive(Clone, Debug)]
pub struct DiagramCylinder<F> {
    pub diagram: Diagram<F>,
    pub parts: Vec<DoubleCylinder<F>>,
    /// `Z → Cyl`, strict.
    pub i: PreMorphism<F>,
    /// `Y → Cyl`, strict.
    pub j: PreMorphism<F>,
    /// Degree −1, `(k_i, 0)`: a homotopy from `j f` to `i g`.
    pub k: PreMorphism<F>,
    pub r: i32,
}

pub fn diagram_double_cylinder<F: Field>(
    f: &PreMorphism<F>,
    g: &PreMorphism<F>,
    x: &Diagram<F>,
    y: &Diagram<F>,
    z: &Diagram<F>,
    r: i32,
) -> Result<DiagramCylinder<F>> {
    f.check_shape(x, y)?;
    g.check_shape(x, z)?;
    let parts: Vec<DoubleCylinder<F>> = (0..x.shape().len())
        .map(|i| double_cylinder(&f.comps[i], &g.comps[i], x.vertex(i), y.vertex(i), z.vertex(i), r))
        .collect();
    let psi = x
        .shape()
        .arrows()
        .iter()
        .enumerate()
        .map(|(u, a)| {
            let mf = f.legs[u].neg();
            cylinder_map(
                &parts[a.source],
                &parts[a.target],
                0,
                &[
                    (0, 0, x.comparison(u)),
                    (1, 0, &mf),
                    (2, 0, &g.legs[u]),
                    (1, 1, y.comparison(u)),
                    (2, 2, z.comparison(u)),
                ],
            )
        })
        .collect();
    let diagram = Diagram::new(x.shape().clone(), parts.iter().map(|p| p.cyl.clone()).collect(), psi)?;
    let i = PreMorphism::strict(z, &diagram, parts.iter().map(|p| p.i.clone()).collect());
    let j = PreMorphism::strict(y, &diagram, parts.iter().map(|p| p.j.clone()).collect());
    let k = PreMorphism::strict(x, &diagram, parts.iter().map(|p| p.k.clone()).collect());
    Ok(DiagramCylinder { diagram, parts, i, j, k, r })
}

impl<F: Field> DiagramCylinder<F> {
    /// The certificate `k: j f ≃ i g`.
    pub fn k_certificate(&self, f: &PreMorphism<F>, g: &PreMorphism<F>) -> HoHomotopy<F> {
        let s = self.diagram.shape();
        HoHomotopy::new(self.j.compose(f, s), self.i.compose(g, s), self.k.clone(), self.r)
    }

    /// `t_i(x, y, z) = h_i(x) + u_i(y) + v_i(z)` and
    /// `T_u(x, y, z) = H_u(x) + U_u(y) + V_u(z)`.
    pub fn assemble(&self, h: &PreMorphism<F>, u: &PreMorphism<F>, v: &PreMorphism<F>) -> PreMorphism<F> {
        let comps = self.parts.iter().enumerate().map(|(i, p)| p.assemble(&h.comps[i], &u.comps[i], &v.comps[i])).collect();
        let legs = self
            .diagram
            .shape()
            .arrows()
            .iter()
            .enumerate()
            .map(|(w, a)| self.parts[a.source].assemble(&h.legs[w], &u.legs[w], &v.legs[w]))
            .collect();
        PreMorphism { degree: u.degree, comps, legs }
    }

    /// `t ↦ (t k, t j, t i)`.
    pub fn disassemble(&self, t: &PreMorphism<F>) -> (PreMorphism<F>, PreMorphism<F>, PreMorphism<F>) {
        let s = self.diagram.shape();
        (t.compose(&self.k, s), t.compose(&self.j, s), t.compose(&self.i, s))
    }
}

/// The diagram with zero vertices shaped like `x`.
pub fn zero_diagram<F: Field>(x: &Diagram<F>) -> Diagram<F> {
    let vertices: Vec<_> = x.vertices().iter().map(zero_like).collect();
    let comparisons = x
        .shape()
        .arrows()
        .iter()
        .map(|a| GradedMap::zero(0, vertices[a.source].grading(), vertices[a.target].grading()))
        .collect();
    Diagram::new(x.shape().clone(), vertices, comparisons).expect("zero diagram")
}

/// `C(f) = Cyl(0, f)` with `0: X → 0`; the `j` leg of the result is empty.
pub fn diagram_cone<F: Field>(f: &PreMorphism<F>, x: &Diagram<F>, y: &Diagram<F>, r: i32) -> Result<DiagramCylinder<F>> {
    let zero = zero_diagram(x);
    let to_zero = PreMorphism::zero(x, &zero, 0);
    diagram_double_cylinder(&to_zero, f, x, &zero, y, r)
}

/// `X --i--> Cyl(f) <--j-- Y` with `p: Cyl(f) ⇝ Y`, `p i = f`, `p j = 1`
/// and the certificate `h: j p ≃ 1`.
#[derive(Clone, Debug)]
pub struct Factorization<F> {
    pub cyl: DiagramCylinder<F>,
    pub p: PreMorphism<F>,
    pub h: HoHomotopy<F>,
}

impl<F: Field> Factorization<F> {
    pub fn diagram(&self) -> &Diagram<F> {
        &self.cyl.diagram
    }

    pub fn i(&self) -> &PreMorphism<F> {
        &self.cyl.i
    }

    pub fn j(&self) -> &PreMorphism<F> {
        &self.cyl.j
    }
}

/// `Cyl(f) = Cyl(f, 1_X)` with `p_i(x, y, z) = y + f_i(z)`,
/// `P_u(x, y, z) = F_u(z)` and `h_i(x, y, z) = (z, 0, 0)`.
pub fn factorize<F: Field>(f: &PreMorphism<F>, x: &Diagram<F>, y: &Diagram<F>, r: i32) -> Result<Factorization<F>> {
    let id = PreMorphism::identity(x);
    let cyl = diagram_double_cylinder(f, &id, x, y, x, r)?;
    let c = &cyl.diagram;
    let u = PreMorphism::identity(y);
    let p = cyl.assemble(&PreMorphism::zero(x, y, -1), &u, f);
    let comps = cyl
        .parts
        .iter()
        .map(|part| {
            let g = part.cyl.grading();
            GradedMap::from_fn(-1, g, g, |n| &part.embed(n - 1, 0) * &part.component(n, 2))
        })
        .collect();
    let h = PreMorphism::strict(c, c, comps);
    let jp = cyl.j.compose(&p, c.shape());
    let h = HoHomotopy::new(jp, PreMorphism::identity(c), h, r);
    Ok(Factorization { cyl, p, h })
}

/// `(a, b)_*: Cyl(f) ⇝ Cyl(g)` for a square `g a = b f`: components
/// `(a_i x, b_i y, a_i z)`, legs `(−A_u x, B_u y, A_u z)`.
pub fn induced_cylinder_map<F: Field>(
    a: &PreMorphism<F>,
    b: &PreMorphism<F>,
    cf: &Factorization<F>,
    cg: &Factorization<F>,
    f: &PreMorphism<F>,
    g: &PreMorphism<F>,
) -> Result<PreMorphism<F>> {
    let s = cf.diagram().shape();
    if g.compose(a, s) != b.compose(f, s) {
        return Err(Error::Inconsistent("the square g a = b f does not commute".into()));
    }
    let (src, tgt) = (&cf.cyl.parts, &cg.cyl.parts);
    let comps = (0..s.len())
        .map(|i| cylinder_map(&src[i], &tgt[i], 0, &[(0, 0, &a.comps[i]), (1, 1, &b.comps[i]), (2, 2, &a.comps[i])]))
        .collect();
    let legs = s
        .arrows()
        .iter()
        .enumerate()
        .map(|(u, arr)| {
            let ma = a.legs[u].neg();
            cylinder_map(
                &src[arr.source],
                &tgt[arr.target],
                -1,
                &[(0, 0, &ma), (1, 1, &b.legs[u]), (2, 2, &a.legs[u])],
            )
        })
        .collect();
    Ok(PreMorphism { degree: 0, comps, legs })
}

/// `X --i_f--> Cyl(f) <--j_f-- Y` representing `j_f^{-1} i_f`, with `p_f`
/// a homotopy inverse of `j_f`.
#[derive(Clone, Debug)]
pub struct Span<F> {
    pub factorization: Factorization<F>,
}

pub fn rectify<F: Field>(f: &PreMorphism<F>, x: &Diagram<F>, y: &Diagram<F>, r: i32) -> Result<Span<F>> {
    Ok(Span { factorization: factorize(f, x, y, r)? })
}

impl<F: Field> Span<F> {
    pub fn i_f(&self) -> &PreMorphism<F> {
        self.factorization.i()
    }

    pub fn j_f(&self) -> &PreMorphism<F> {
        self.factorization.j()
    }

    pub fn p_f(&self) -> &PreMorphism<F> {
        &self.factorization.p
    }

    /// `p i = f`, `p j = 1`, `j p ≃ 1` certified, `i`, `j` strict and every
    /// map admissible.
    pub fn check(&self, f: &PreMorphism<F>, x: &Diagram<F>, y: &Diagram<F>) -> Result<bool> {
        let fz = &self.factorization;
        let c = fz.diagram();
        let s = c.shape();
        let r = fz.cyl.r;
        Ok(fz.p.compose(self.i_f(), s) == *f
            && fz.p.compose(self.j_f(), s) == PreMorphism::identity(y)
            && fz.h.check(c, c)?
            && self.i_f().is_strict()
            && self.j_f().is_strict()
            && self.i_f().is_ho_morphism(x, c, r)
            && self.j_f().is_ho_morphism(y, c, r)
            && fz.p.is_ho_morphism(c, y, r))
    }
}

/// Checks the wheel relating the spans of homotopic `f ≃ g` through the
/// cylinder of the homotopy `H: Cyl(X) ⇝ Y`.
pub fn homotopy_wheel<F: Field>(hom: &HoHomotopy<F>, x: &Diagram<F>, y: &Diagram<F>) -> Result<bool> {
    let r = hom.r;
    let s = x.shape();
    let (f, g) = (&hom.f, &hom.g);
    let id = PreMorphism::identity(x);
    let cyl_x = diagram_double_cylinder(&id, &id, x, x, x, r)?;
    let big = cyl_x.assemble(&hom.reverse().h, g, f);
    let (ix, jx) = (&cyl_x.i, &cyl_x.j);
    if big.compose(ix, s) != *f || big.compose(jx, s) != *g || !big.is_ho_morphism(&cyl_x.diagram, y, r) {
        return Ok(false);
    }
    let cf = factorize(f, x, y, r)?;
    let cg = factorize(g, x, y, r)?;
    let ch = factorize(&big, &cyl_x.diagram, y, r)?;
    let one = PreMorphism::identity(y);
    let f_star = induced_cylinder_map(ix, &one, &cf, &ch, f, &big)?;
    let g_star = induced_cylinder_map(jx, &one, &cg, &ch, g, &big)?;
    let c = ch.diagram();
    let k_cert = cyl_x.k_certificate(&id, &id).post(ch.i(), x);
    Ok(f_star.is_ho_morphism(cf.diagram(), c, r)
        && g_star.is_ho_morphism(cg.diagram(), c, r)
        && f_star.compose(cf.i(), s) == ch.i().compose(ix, s)
        && g_star.compose(cg.i(), s) == ch.i().compose(jx, s)
        && f_star.compose(cf.j(), s) == *ch.j()
        && g_star.compose(cg.j(), s) == *ch.j()
        && k_cert.check(x, c)?)
}

/// The diagram comparing the spans of `f`, `g` and `g f`: `a = (1, g)_*`,
/// `b = j_{gf} g`, `c = j_{gf} p_g`, with `a j_f = b = c i_g`,
/// `a i_f = i_{gf}` and `c j_g = j_{gf}`.
pub fn composition_diagram<F: Field>(
    f: &PreMorphism<F>,
    g: &PreMorphism<F>,
    x: &Diagram<F>,
    y: &Diagram<F>,
    z: &Diagram<F>,
    r: i32,
) -> Result<bool> {
    let s = x.shape();
    let gf = g.compose(f, s);
    let cf = factorize(f, x, y, r)?;
    let cg = factorize(g, y, z, r)?;
    let cgf = factorize(&gf, x, z, r)?;
    let a = induced_cylinder_map(&PreMorphism::identity(x), g, &cf, &cgf, f, &gf)?;
    let b = cgf.j().compose(g, s);
    let c = cgf.j().compose(&cg.p, s);
    Ok(a.is_ho_morphism(cf.diagram(), cgf.diagram(), r)
        && c.is_ho_morphism(cg.diagram(), cgf.diagram(), r)
        && a.compose(cf.j(), s) == b
        && c.compose(cg.i(), s) == b
        && a.compose(cf.i(), s) == *cgf.i()
        && c.compose(cg.j(), s) == *cgf.j())
}

