use crate::exactla::{Field, Matrix, Subspace};

/// A finite decreasing chain `… ⊇ F^p ⊇ F^{p+1} ⊇ …` of subspaces of one
/// space, full below `lo` and zero from `top()` on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain<F> {
    dim: usize,
    lo: i32,
    levels: Vec<Subspace<F>>,
}

impl<F: Field> Chain<F> {
    /// Normalizes `levels[k] = F^{start + k}`. Levels before the window are
    /// taken to equal the first one, levels after it to be zero.
    pub fn from_levels(dim: usize, start: i32, mut levels: Vec<Subspace<F>>) -> Self {
        if dim == 0 {
            return Chain { dim, lo: 0, levels: Vec::new() };
        }
        debug_assert!(levels.windows(2).all(|w| w[1].is_subspace_of(&w[0])), "chain is not decreasing");
        debug_assert!(levels.first().is_none_or(Subspace::is_full), "chain is not exhaustive");
        while levels.last().is_some_and(Subspace::is_zero) {
            levels.pop();
        }
        if levels.is_empty() {
            // F^p = 0 from `start` on, full before
            return Chain { dim, lo: start - 1, levels: vec![Subspace::full(dim)] };
        }
        let skip = levels.iter().take_while(|s| s.is_full()).count().saturating_sub(1);
        levels.drain(..skip);
        Chain { dim, lo: start + skip as i32, levels }
    }

    /// Evaluates `f` on `start..=end`; `f(start)` must be full and `f(end)` zero.
    pub fn from_fn(dim: usize, start: i32, end: i32, f: impl FnMut(i32) -> Subspace<F>) -> Self {
        Self::from_levels(dim, start, (start..=end).map(f).collect())
    }

    /// `F^p = K` for `p ≤ 0`, `F^1 = 0`.
    pub fn trivial(dim: usize) -> Self {
        Self::from_levels(dim, 0, vec![Subspace::full(dim)])
    }

    /// `F^p = K` for `p ≤ at`, zero above.
    pub fn concentrated(dim: usize, at: i32) -> Self {
        Self::from_levels(dim, at, vec![Subspace::full(dim)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Largest level equal to the whole space (0 when the space is 0).
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Smallest level equal to zero.
    pub fn top(&self) -> i32 {
        self.lo + self.levels.len() as i32
    }

    pub fn levels(&self) -> &[Subspace<F>] {
        &self.levels
    }

    pub fn get(&self, p: i32) -> Subspace<F> {
        if self.dim == 0 {
            return Subspace::zero(0);
        }
        if p <= self.lo {
            return Subspace::full(self.dim);
        }
        let k = (p - self.lo) as usize;
        if k < self.levels.len() {
            self.levels[k].clone()
        } else {
            Subspace::zero(self.dim)
        }
    }

    /// `G^p = F^{p - by}`.
    pub fn reindex(&self, by: i32) -> Self {
        if self.dim == 0 {
            return self.clone();
        }
        Chain { dim: self.dim, lo: self.lo + by, levels: self.levels.clone() }
    }

    /// Levelwise direct sum.
    pub fn direct_sum(parts: &[&Self]) -> Self {
        let dim = parts.iter().map(|c| c.dim).sum();
        let nonempty: Vec<&&Self> = parts.iter().filter(|c| c.dim > 0).collect();
        if nonempty.is_empty() {
            return Chain { dim, lo: 0, levels: Vec::new() };
        }
        let start = nonempty.iter().map(|c| c.lo).min().unwrap();
        let end = nonempty.iter().map(|c| c.top()).max().unwrap();
        Self::from_fn(dim, start, end, |p| {
            let mut rows: Vec<Vec<F>> = Vec::new();
            let mut off = 0;
            for c in parts {
                for v in c.get(p).vectors() {
                    let mut w = vec![F::zero(); dim];
                    w[off..off + c.dim].clone_from_slice(&v);
                    rows.push(w);
                }
                off += c.dim;
            }
            Subspace::span(dim, &rows)
        })
    }

    /// Image of each level under an invertible map.
    pub fn transport(&self, m: &Matrix<F>) -> Self {
        assert!(m.is_square() && m.cols() == self.dim);
        Chain { dim: self.dim, lo: self.lo, levels: self.levels.iter().map(|s| s.image_under(m)).collect() }
    }

    pub fn conjugate(&self) -> Self {
        Chain { dim: self.dim, lo: self.lo, levels: self.levels.iter().map(Subspace::conjugate).collect() }
    }

    pub fn is_rational(&self) -> bool {
        self.levels.iter().all(Subspace::is_rational)
    }

    /// `F^p ⊆ G^p` for every `p`.
    pub fn is_finer_than(&self, other: &Self) -> bool {
        let start = self.lo.min(other.lo);
        let end = self.top().max(other.top());
        (start..=end).all(|p| self.get(p).is_subspace_of(&other.get(p)))
    }

    /// `dim F^p / F^{p+1}` for `p` in `lo..top`.
    pub fn graded_dims(&self) -> Vec<(i32, usize)> {
        (self.lo..self.top()).map(|p| (p, self.get(p).dim() - self.get(p + 1).dim())).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `F^p`, decreasing in `p`.
    Decreasing,
    /// `W_p`, increasing in `p`; stored as `W_p = F^{-p}`.
    Increasing,
}

impl Direction {
    /// Internal (decreasing) index of a user-facing level.
    pub fn internal(self, level: i32) -> i32 {
        match self {
            Direction::Decreasing => level,
            Direction::Increasing => -level,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Decreasing => "decreasing",
            Direction::Increasing => "increasing",
        }
    }
}

/// One filtration on every degree of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Filtration<F> {
    pub name: String,
    pub direction: Direction,
    /// Indexed like the degrees of the complex.
    pub chains: Vec<Chain<F>>,
}

impl<F: Field> Filtration<F> {
    pub fn new(name: impl Into<String>, direction: Direction, chains: Vec<Chain<F>>) -> Self {
        Filtration { name: name.into(), direction, chains }
    }

    /// Window of internal levels across all degrees.
    pub fn window(&self) -> (i32, i32) {
        let nonempty = self.chains.iter().filter(|c| c.dim() > 0);
        let lo = nonempty.clone().map(Chain::lo).min().unwrap_or(0);
        let top = nonempty.map(Chain::top).max().unwrap_or(0);
        (lo, top)
    }

    /// Number of distinct jumps, a bound on the length of the filtration.
    pub fn length(&self) -> i32 {
        let (lo, top) = self.window();
        top - lo
    }

    pub fn map_chains(&self, f: impl Fn(usize, &Chain<F>) -> Chain<F>) -> Self {
        Filtration {
            name: self.name.clone(),
            direction: self.direction,
            chains: self.chains.iter().enumerate().map(|(k, c)| f(k, c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rational;

    fn line(v: &[i64]) -> Subspace<Rational> {
        Subspace::span(v.len(), &[v.iter().map(|&x| Rational::from_int(x)).collect()])
    }

    #[test]
    fn normalization_is_canonical() {
        let a = Chain::from_levels(2, -3, vec![Subspace::full(2), Subspace::full(2), line(&[1, 0]), Subspace::zero(2)]);
        let b = Chain::from_levels(2, -2, vec![Subspace::full(2), line(&[1, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.lo(), -2);
        assert_eq!(a.top(), 0);
        assert_eq!(a.get(-10), Subspace::full(2));
        assert_eq!(a.get(-1), line(&[1, 0]));
        assert!(a.get(0).is_zero());
        assert_eq!(a.graded_dims(), vec![(-2, 1), (-1, 1)]);
    }

    #[test]
    fn zero_chain() {
        let z = Chain::<Rational>::from_levels(3, 3, vec![Subspace::full(3), Subspace::zero(3)]);
        assert_eq!(z, Chain::from_levels(3, 2, vec![Subspace::full(3), Subspace::zero(3)]).reindex(1));
        assert!(z.get(4).is_zero());
        assert!(z.get(3).is_full());
    }

    #[test]
    fn sums() {
        let a = Chain::<Rational>::concentrated(1, 0);
        let b = Chain::<Rational>::concentrated(1, 1);
        let s = Chain::direct_sum(&[&a, &b]);
        assert_eq!(s.graded_dims(), vec![(0, 1), (1, 1)]);
        assert_eq!(s.get(1), line(&[0, 1]));
    }
}
