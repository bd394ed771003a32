use crate::diagrams::{Diagram, ZigzagShape};
use crate::error::{shape, Result};
use crate::exactla::{Field, Matrix};
use crate::filtered::{Chain, Complex, Direction, Filtration, FilteredComplex, GradedMap, Grading};

use super::mhs::MixedHodgeStructure;

/// A bounded complex of mixed Hodge structures: `d^n: H^n → H^{n+1}` given in
/// rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MhsComplex<F> {
    pub lo: i32,
    pub terms: Vec<MixedHodgeStructure<F>>,
    pub diffs: Vec<Matrix<F>>,
}

pub(crate) fn weight_filtration<F: Field>(chains: Vec<Chain<F>>) -> Filtration<F> {
    Filtration::new("W", Direction::Increasing, chains)
}

pub(crate) fn hodge_filtration<F: Field>(chains: Vec<Chain<F>>) -> Filtration<F> {
    Filtration::new("F", Direction::Decreasing, chains)
}

impl<F: Field> MhsComplex<F> {
    pub fn new(lo: i32, terms: Vec<MixedHodgeStructure<F>>, diffs: Vec<Matrix<F>>) -> Result<Self> {
        let c = MhsComplex { lo, terms, diffs };
        c.rational_complex()?;
        Ok(c)
    }

    /// `H^n` as a complex with zero differential in one degree.
    pub fn single(n: i32, h: MixedHodgeStructure<F>) -> Self {
        MhsComplex { lo: n, terms: vec![h], diffs: Vec::new() }
    }

    pub fn grading(&self) -> Grading {
        Grading::new(self.lo, self.terms.iter().map(MixedHodgeStructure::dim).collect())
    }

    fn rational_complex(&self) -> Result<Complex<F>> {
        if self.diffs.iter().any(|d| !d.is_rational()) {
            return Err(shape("differentials must be rational"));
        }
        Complex::new(self.lo, self.grading().dims, self.diffs.clone())
    }

    fn comparison(&self) -> GradedMap<F> {
        let g = self.grading();
        let blocks = self.terms.iter().map(|t| t.comparison.clone()).collect();
        GradedMap::new(0, g.clone(), g, blocks).expect("comparison shapes")
    }

    /// `0 → 1 ← 2` with `K_0 = (H_𝐤, W)`, `K_1 = (H_ℂ, W)`, `K_2 = (H_ℂ, W, F)`,
    /// `φ_{0→1} = c` and `φ_{2→1} = 1`.
    pub fn to_diagram(&self) -> Result<Diagram<F>> {
        self.to_diagram_twisted(None)
    }

    /// As [`Self::to_diagram`] with vertex 2 replaced by `g^{-1} K_ℂ` and
    /// `φ_{2→1} = g`.
    pub fn to_diagram_twisted(&self, twist: Option<&[Matrix<F>]>) -> Result<Diagram<F>> {
        let kk = self.rational_complex()?;
        let c = self.comparison();
        let inv = c.map_blocks(|m| m.inverse().expect("invertible comparison"));
        let dc = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| &(&c.blocks()[k + 1] * d) * &inv.blocks()[k])
            .collect();
        let kc = Complex::new(self.lo, self.grading().dims, dc)?;
        let rw = self.terms.iter().map(|t| t.rational_weight.clone()).collect();
        let w: Vec<Chain<F>> = self.terms.iter().map(|t| t.weight.clone()).collect();
        let f: Vec<Chain<F>> = self.terms.iter().map(|t| t.hodge.clone()).collect();
        let k0 = FilteredComplex::new(kk, vec![weight_filtration(rw)])?;
        let k1 = FilteredComplex::new(kc.clone(), vec![weight_filtration(w.clone())])?;
        let g = self.grading();
        let (k2, phi2) = match twist {
            None => (
                FilteredComplex::new(kc, vec![weight_filtration(w), hodge_filtration(f)])?,
                GradedMap::identity(&g),
            ),
            Some(gs) => {
                let gm = GradedMap::new(0, g.clone(), g.clone(), gs.to_vec())?;
                let gi = gm.map_blocks(|m| m.inverse().expect("invertible twist"));
                let diffs = kc.diffs().iter().take(g.dims.len().saturating_sub(1)).enumerate().map(|(k, d)| &(&gi.blocks()[k + 1] * d) * &gs[k]).collect();
                let tc = Complex::new(self.lo, g.dims.clone(), diffs)?;
                let tw = w.iter().zip(gi.blocks()).map(|(ch, m)| ch.transport(m)).collect();
                let tf = f.iter().zip(gi.blocks()).map(|(ch, m)| ch.transport(m)).collect();
                (FilteredComplex::new(tc, vec![weight_filtration(tw), hodge_filtration(tf)])?, gm)
            }
        };
        Diagram::new(ZigzagShape::zigzag(2)?, vec![k0, k1, k2], vec![c, phi2])
    }

    /// Whether every term is a mixed Hodge structure and every differential a
    /// morphism of them.
    pub fn is_valid(&self) -> bool {
        self.terms.iter().all(MixedHodgeStructure::is_mhs)
            && self.diffs.iter().enumerate().all(|(k, d)| {
                let (a, b) = (&self.terms[k], &self.terms[k + 1]);
                let m = &(&b.comparison * d) * &a.comparison.inverse().expect("invertible");
                let spaces = super::mhs::HomSpaces::new(a, b);
                let v = crate::exactla::flatten(&[m]);
                spaces.mhs_morphisms().contains(&v)
            })
    }
}
