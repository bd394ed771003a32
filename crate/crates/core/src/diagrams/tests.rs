use super::*;
use crate::exactla::{Field, Gaussian, Rational};
use crate::random::{self, ComplexBounds};

type Q = Rational;

const SMALL: ComplexBounds = ComplexBounds { max_degrees: 3, max_dim: 2, max_levels: 3 };

fn pair<F: crate::Field>(seed: u64, s: usize) -> (Diagram<F>, Diagram<F>, random::Rng8) {
    let mut rng = random::rng(seed);
    let shape = ZigzagShape::zigzag(s).unwrap();
    let x = random::diagram_in(&mut rng, &shape, 0, 2, SMALL);
    let y = random::diagram_in(&mut rng, &shape, 0, 2, SMALL);
    (x, y, rng)
}

#[test]
fn zigzag_shapes() {
    let s = ZigzagShape::zigzag(4).unwrap();
    assert_eq!(s.len(), 5);
    assert_eq!(s.arrows().len(), 4);
    assert_eq!((0..5).map(|i| s.degree(i)).collect::<Vec<_>>(), vec![0, 1, 0, 1, 0]);
    assert_eq!(s.kind(0), VertexKind::Base);
    assert_eq!(s.kind(4), VertexKind::Bifiltered);
    assert!(ZigzagShape::zigzag(3).is_err());
    let bad = vec![Arrow { source: 0, target: 1 }, Arrow { source: 1, target: 2 }];
    assert!(ZigzagShape::new(vec![VertexKind::Base, VertexKind::Extended, VertexKind::Extended], bad).is_err());
}

#[test]
fn differential_squares_to_zero() {
    for seed in 0..30 {
        let (x, y, mut rng) = pair::<Q>(seed, 2);
        for degree in -2..=2 {
            let f = random::pre_morphism(&mut rng, &x, &y, degree, 0);
            let mut unfiltered = PreMorphism::zero(&x, &y, degree);
            for (i, c) in unfiltered.comps.iter_mut().enumerate() {
                let (a, b) = (x.vertex(i), y.vertex(i));
                *c = crate::filtered::GradedMap::from_fn(degree, a.grading(), b.grading(), |n| {
                    random::matrix(&mut rng, b.dim(n + degree), a.dim(n), true)
                });
            }
            for (u, l) in unfiltered.legs.iter_mut().enumerate() {
                let arr = x.shape().arrow(u);
                let (a, b) = (x.vertex(arr.source), y.vertex(arr.target));
                *l = crate::filtered::GradedMap::from_fn(degree - 1, a.grading(), b.grading(), |n| {
                    random::matrix(&mut rng, b.dim(n + degree - 1), a.dim(n), true)
                });
            }
            for g in [f, unfiltered] {
                assert!(g.differential(&x, &y).differential(&x, &y).is_zero(), "seed {seed} degree {degree}");
            }
        }
    }
}

#[test]
fn identity_and_strict_are_closed() {
    let (x, _, _) = pair::<Gaussian>(3, 2);
    let id = PreMorphism::identity(&x);
    assert!(id.differential(&x, &x).is_zero());
    assert!(id.is_ho_morphism(&x, &x, 0));
}

#[test]
fn leibniz_rule_in_all_degrees() {
    for seed in 0..15 {
        let mut rng = random::rng(500 + seed);
        let shape = ZigzagShape::zigzag(2).unwrap();
        let x: Diagram<Q> = random::diagram_in(&mut rng, &shape, 0, 2, SMALL);
        let y = random::diagram_in(&mut rng, &shape, 0, 2, SMALL);
        let z = random::diagram_in(&mut rng, &shape, 0, 2, SMALL);
        for a in -2..=1 {
            for b in -2..=1 {
                let f = random::pre_morphism(&mut rng, &x, &y, b, 0);
                let g = random::pre_morphism(&mut rng, &y, &z, a, 0);
                let lhs = g.compose(&f, &shape).differential(&x, &z);
                let sign = if a % 2 == 0 { Q::from_int(1) } else { Q::from_int(-1) };
                let rhs = g.differential(&y, &z).compose(&f, &shape).add(&g.compose(&f.differential(&x, &y), &shape).scale(&sign));
                assert_eq!(lhs, rhs, "degrees {a}, {b}");
            }
        }
    }
}

#[test]
fn composition_is_associative_with_unit() {
    for seed in 0..15 {
        let mut rng = random::rng(600 + seed);
        let shape = ZigzagShape::zigzag(2).unwrap();
        let ds: Vec<Diagram<Q>> = (0..4).map(|_| random::diagram_in(&mut rng, &shape, 0, 2, SMALL)).collect();
        let f = random::pre_morphism(&mut rng, &ds[0], &ds[1], 0, 0);
        let g = random::pre_morphism(&mut rng, &ds[1], &ds[2], -1, 0);
        let h = random::pre_morphism(&mut rng, &ds[2], &ds[3], 1, 0);
        assert_eq!(h.compose(&g, &shape).compose(&f, &shape), h.compose(&g.compose(&f, &shape), &shape));
        assert_eq!(f.compose(&PreMorphism::identity(&ds[0]), &shape), f);
        assert_eq!(PreMorphism::identity(&ds[1]).compose(&f, &shape), f);
    }
}

#[test]
fn inverses_are_two_sided() {
    let mut found = 0;
    for seed in 0..40 {
        let (x, _, mut rng) = pair::<Q>(700 + seed, 2);
        let f = random::ho_morphism(&mut rng, &x, &x, 0);
        let Ok(g) = f.invert(x.shape()) else { continue };
        found += 1;
        assert!(g.is_ho_morphism(&x, &x, 0) || !g.is_admissible(&x, &x, 0));
        assert!(g.differential(&x, &x).is_zero());
        assert_eq!(g.compose(&f, x.shape()), PreMorphism::identity(&x));
        assert_eq!(f.compose(&g, x.shape()), PreMorphism::identity(&x));
        assert_eq!(g.invert(x.shape()).unwrap(), f);
    }
    assert!(found >= 10, "{found}");
}

#[test]
fn homotopies_of_ho_morphisms() {
    for seed in 0..15 {
        let (x, y, mut rng) = pair::<Q>(800 + seed, 2);
        let f = random::ho_morphism(&mut rng, &x, &y, 0);
        assert!(f.is_ho_morphism(&x, &y, 0));
        assert!(HoHomotopy::reflexive(&f, &x, &y, 0).check(&x, &y).unwrap());
        let h1 = random::pre_morphism(&mut rng, &x, &y, -1, 0);
        let g = f.add(&h1.differential(&x, &y));
        let c1 = HoHomotopy::new(f.clone(), g.clone(), h1, 0);
        assert!(c1.check(&x, &y).unwrap());
        let h2 = random::pre_morphism(&mut rng, &x, &y, -1, 0);
        let c2 = HoHomotopy::new(g.clone(), g.add(&h2.differential(&x, &y)), h2, 0);
        assert!(c1.then(&c2).check(&x, &y).unwrap());
        assert!(c1.reverse().check(&x, &y).unwrap());
        let z = random::diagram_in(&mut rng, x.shape(), 0, 2, SMALL);
        let a = random::ho_morphism(&mut rng, &y, &z, 0);
        assert!(c1.post(&a, &x).check(&x, &z).unwrap());
        let b = random::ho_morphism(&mut rng, &z, &x, 0);
        assert!(c1.pre(&b, &z).check(&z, &y).unwrap());
        let solved = solve_ho_homotopy(&f, &g, &x, &y, 0).unwrap();
        assert!(solved.check(&x, &y).unwrap());
        assert!(check_ho_homotopy(&c1.h, &f, &f, &x, &y, 0).unwrap() == c1.h.differential(&x, &y).is_zero());
    }
}

#[test]
fn double_cylinder_universal_property() {
    for seed in 0..10 {
        let mut rng = random::rng(900 + seed);
        let shape = ZigzagShape::zigzag(2).unwrap();
        let x: Diagram<Q> = random::diagram_in(&mut rng, &shape, 0, 2, SMALL);
        let y = random::diagram_in(&mut rng, &shape, 0, 2, SMALL);
        let z = random::diagram_in(&mut rng, &shape, 0, 2, SMALL);
        let f = random::ho_morphism(&mut rng, &x, &y, 0);
        let g = random::ho_morphism(&mut rng, &x, &z, 0);
        let dc = diagram_double_cylinder(&f, &g, &x, &y, &z, 0).unwrap();
        let c = &dc.diagram;
        assert!(dc.i.is_ho_morphism(&z, c, 0));
        assert!(dc.j.is_ho_morphism(&y, c, 0));
        assert!(dc.k_certificate(&f, &g).check(&x, c).unwrap());
        let w = random::diagram_in(&mut rng, &shape, 0, 2, SMALL);
        let t = random::ho_morphism(&mut rng, c, &w, 0);
        let (h, u, v) = dc.disassemble(&t);
        let cert = HoHomotopy::new(u.compose(&f, &shape), v.compose(&g, &shape), h.clone(), 0);
        assert!(cert.check(&x, &w).unwrap());
        assert_eq!(dc.assemble(&h, &u, &v), t);
    }
}

#[test]
fn strict_cylinder_has_block_diagonal_comparisons() {
    let (x, y, _) = pair::<Q>(31, 2);
    let f = PreMorphism::zero(&x, &y, 0);
    let g = PreMorphism::identity(&x);
    let dc = diagram_double_cylinder(&f, &g, &x, &y, &x, 0).unwrap();
    for (u, a) in x.shape().arrows().iter().enumerate() {
        let psi = dc.diagram.comparison(u);
        let (src, tgt) = (&dc.parts[a.source], &dc.parts[a.target]);
        for n in src.cyl.complex().degrees() {
            for row in 0..3 {
                for col in 0..3 {
                    if row != col {
                        let b = &(&tgt.component(n, row) * &*psi.at(n)) * &src.embed(n, col);
                        assert!(b.is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn factorization_and_rectification() {
    for seed in 0..10 {
        for r in 0..2 {
            let (x, y, mut rng) = pair::<Q>(1000 + seed, 2);
            let f = random::ho_morphism(&mut rng, &x, &y, r);
            let span = rectify(&f, &x, &y, r).unwrap();
            assert!(span.check(&f, &x, &y).unwrap(), "seed {seed} r {r}");
            let fz = &span.factorization;
            assert!(fz.j().is_levelwise_quasi_iso(&y, fz.diagram()));
            assert!(fz.p.is_levelwise_quasi_iso(fz.diagram(), &y));
            let legs_of_pi: Vec<_> = fz.p.compose(fz.i(), x.shape()).legs;
            assert_eq!(legs_of_pi, f.legs);
        }
    }
}

#[test]
fn induced_cylinder_maps_commute() {
    for seed in 0..10 {
        let mut rng = random::rng(1100 + seed);
        let shape = ZigzagShape::zigzag(2).unwrap();
        let x: Diagram<Q> = random::diagram_in(&mut rng, &shape, 0, 2, SMALL);
        let y = random::diagram_in(&mut rng, &shape, 0, 2, SMALL);
        let y2 = random::diagram_in(&mut rng, &shape, 0, 2, SMALL);
        let f = random::ho_morphism(&mut rng, &x, &y, 0);
        let b = random::ho_morphism(&mut rng, &y, &y2, 0);
        let a = PreMorphism::identity(&x);
        let g = b.compose(&f, &shape);
        let cf = factorize(&f, &x, &y, 0).unwrap();
        let cg = factorize(&g, &x, &y2, 0).unwrap();
        let m = induced_cylinder_map(&a, &b, &cf, &cg, &f, &g).unwrap();
        assert!(m.is_ho_morphism(cf.diagram(), cg.diagram(), 0));
        assert_eq!(m.compose(cf.i(), &shape), cg.i().compose(&a, &shape));
        assert_eq!(m.compose(cf.j(), &shape), cg.j().compose(&b, &shape));
        assert_eq!(cg.p.compose(&m, &shape), b.compose(&cf.p, &shape));
        let id = induced_cylinder_map(&a, &PreMorphism::identity(&y), &cf, &cf, &f, &f).unwrap();
        assert_eq!(id, PreMorphism::identity(cf.diagram()));
        assert!(induced_cylinder_map(&a, &b.scale(&Q::from_int(2)), &cf, &cg, &f, &g).is_err() || g.is_zero());
    }
}

#[test]
fn wheel_and_composition_diagrams() {
    for seed in 0..6 {
        let mut rng = random::rng(1200 + seed);
        let shape = ZigzagShape::zigzag(2).unwrap();
        let x: Diagram<Q> = random::diagram_in(&mut rng, &shape, 0, 2, SMALL);
        let y = random::diagram_in(&mut rng, &shape, 0, 2, SMALL);
        let z = random::diagram_in(&mut rng, &shape, 0, 2, SMALL);
        let f = random::ho_morphism(&mut rng, &x, &y, 0);
        let h = random::pre_morphism(&mut rng, &x, &y, -1, 0);
        let g = f.add(&h.differential(&x, &y));
        assert!(homotopy_wheel(&HoHomotopy::new(f.clone(), g, h, 0), &x, &y).unwrap());
        let g2 = random::ho_morphism(&mut rng, &y, &z, 0);
        assert!(composition_diagram(&f, &g2, &x, &y, &z, 0).unwrap());
    }
}

#[test]
fn lifting_along_equivalences() {
    for seed in 0..8 {
        let (x, q, mut rng) = pair::<Q>(1300 + seed, 2);
        let f = random::ho_morphism(&mut rng, &x, &q, 0);
        let id = PreMorphism::identity(&x);
        let (g, cert) = fibrant_lift(&id, &f, &x, &x, &q, 0).unwrap();
        assert!(g.is_ho_morphism(&x, &q, 0));
        assert!(cert.check(&x, &q).unwrap());
        // along the cylinder inclusion j: Y → Cyl(w)
        let fz = factorize(&id, &x, &x, 0).unwrap();
        let (g, cert) = fibrant_lift(fz.j(), &f, &x, fz.diagram(), &q, 0).unwrap();
        assert!(cert.check(&x, &q).unwrap());
        let fp = f.compose(&fz.p, x.shape());
        assert!(solve_ho_homotopy(&g, &fp, fz.diagram(), &q, 0).is_some());
        let (g2, _) = fibrant_lift(fz.j(), &f.add(&PreMorphism::zero(&x, &q, 0)), &x, fz.diagram(), &q, 0).unwrap();
        assert!(solve_ho_homotopy(&g, &g2, fz.diagram(), &q, 0).is_some());
    }
}

#[test]
fn cone_of_identity_is_acyclic() {
    let (x, _, _) = pair::<Q>(77, 2);
    let id = PreMorphism::identity(&x);
    let c = diagram_cone(&id, &x, &x, 0).unwrap();
    assert!(c.diagram.vertices().iter().all(|v| v.complex().is_acyclic()));
}

