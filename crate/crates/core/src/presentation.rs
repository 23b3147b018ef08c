//! Canonically presented abelian groups and maps between them.

use std::fmt;

use crate::imat::IMat;
use crate::snf::{smith_normal_form, unimodular_inverse};

/// Whether a truncated computation saw its presentation settle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stability {
    /// Unchanged from the previous dimension bound.
    Stable,
    /// Still moving at the given bound.
    Unstable,
    /// Bound too small for the question to make sense.
    Truncated,
}

/// Abelian group in canonical invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedGroup {
    /// Invariant factors > 1, each dividing the next.
    pub torsion: Vec<u64>,
    /// Free rank.
    pub rank: usize,
    pub stability: Option<Stability>,
}

impl PresentedGroup {
    pub fn zero() -> Self {
        PresentedGroup { torsion: vec![], rank: 0, stability: None }
    }

    pub fn free(rank: usize) -> Self {
        PresentedGroup { torsion: vec![], rank, stability: None }
    }

    pub fn torsion_only(tors: Vec<u64>) -> Self {
        PresentedGroup { torsion: tors, rank: 0, stability: None }
    }

    pub fn is_zero(&self) -> bool {
        self.torsion.is_empty() && self.rank == 0
    }

    pub fn same_group(&self, other: &PresentedGroup) -> bool {
        self.torsion == other.torsion && self.rank == other.rank
    }
}

impl fmt::Display for PresentedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.rank == 1 {
            parts.push("Z".into());
        } else if self.rank > 1 {
            parts.push(format!("Z^{}", self.rank));
        }
        for &t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", parts.join(" + "))?;
        }
        match self.stability {
            Some(Stability::Stable) => write!(f, " (stable)"),
            Some(Stability::Unstable) => write!(f, " (unstable)"),
            Some(Stability::Truncated) => write!(f, " (truncated)"),
            None => Ok(()),
        }
    }
}

/// Cokernel of an integer relation matrix: the group on `generators` subject
/// to one relation per row.
pub fn abelian_group_from_relations(generators: usize, relations: &IMat) -> PresentedGroup {
    QuotientPresentation::new(generators, relations).group()
}

/// The quotient `ℤ^n / column span` with bookkeeping to express arbitrary
/// vectors in canonical coordinates. Relations are passed row-wise and
/// transposed internally.
pub struct QuotientPresentation {
    n: usize,
    /// u * x * v = s for the column-relations matrix x
    u: IMat,
    uinv: IMat,
    /// canonical factor orders per kept index (0 = free)
    kept: Vec<(usize, u64)>,
}

impl QuotientPresentation {
    pub fn new(generators: usize, relation_rows: &IMat) -> Self {
        assert!(relation_rows.cols == generators || relation_rows.rows == 0);
        let x = if relation_rows.rows == 0 {
            IMat::zeros(generators, 0)
        } else {
            relation_rows.transpose()
        };
        Self::from_columns(generators, &x)
    }

    /// Relations given as columns of `x` inside `ℤ^n`.
    pub fn from_columns(n: usize, x: &IMat) -> Self {
        assert_eq!(x.rows, n);
        let snf = smith_normal_form(x);
        let uinv = unimodular_inverse(&snf.u);
        let mut kept = Vec::new();
        for i in 0..n {
            let d = if i < snf.rank { snf.s[(i, i)] as u64 } else { 0 };
            if d != 1 {
                kept.push((i, d));
            }
        }
        QuotientPresentation { n, u: snf.u, uinv, kept }
    }

    pub fn group(&self) -> PresentedGroup {
        let mut torsion: Vec<u64> = self.kept.iter().map(|&(_, d)| d).filter(|&d| d > 0).collect();
        torsion.sort_unstable();
        let rank = self.kept.iter().filter(|&&(_, d)| d == 0).count();
        PresentedGroup { torsion, rank, stability: None }
    }

    pub fn num_coords(&self) -> usize {
        self.kept.len()
    }

    /// Canonical coordinates of a vector, reduced per factor order.
    pub fn coords(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(v.len(), self.n);
        let c = self.u.apply(v);
        self.kept
            .iter()
            .map(|&(i, d)| if d == 0 { c[i] } else { c[i].rem_euclid(d as i128) })
            .collect()
    }

    /// A representative vector for the k-th canonical generator.
    pub fn generator_rep(&self, k: usize) -> Vec<i128> {
        let (i, _) = self.kept[k];
        self.uinv.col(i)
    }

    /// Order of the k-th canonical factor (0 = infinite).
    pub fn factor_order(&self, k: usize) -> u64 {
        self.kept[k].1
    }

    pub fn is_zero_class(&self, v: &[i128]) -> bool {
        self.coords(v).iter().all(|&c| c == 0)
    }
}

/// A homomorphism between two quotient presentations, stored in canonical
/// coordinates. Built from a matrix on the ambient generators.
pub struct PresentedMap {
    /// matrix entry (i, k): image of source generator k in target coords
    pub matrix: Vec<Vec<i128>>,
}

impl PresentedMap {
    /// `ambient` maps ℤ^{n_src} -> ℤ^{n_tgt} and must carry relations into
    /// relations; this is not re-checked here.
    pub fn from_ambient(
        src: &QuotientPresentation,
        tgt: &QuotientPresentation,
        ambient: &IMat,
    ) -> Self {
        let mut matrix = Vec::with_capacity(src.num_coords());
        for k in 0..src.num_coords() {
            let rep = src.generator_rep(k);
            let img = ambient.apply(&rep);
            matrix.push(tgt.coords(&img));
        }
        PresentedMap { matrix }
    }

    /// True when this is the identity of a single presentation.
    pub fn is_identity(&self, pres: &QuotientPresentation) -> bool {
        let n = pres.num_coords();
        if self.matrix.len() != n {
            return false;
        }
        for (k, row) in self.matrix.iter().enumerate() {
            for (i, &c) in row.iter().enumerate() {
                let want = if i == k { 1 } else { 0 };
                let d = pres.factor_order(i);
                let diff = c - want;
                let ok = if d == 0 { diff == 0 } else { diff.rem_euclid(d as i128) == 0 };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// Test-only style oracle: order of `ℤ^n / row span` by coset enumeration.
/// Uses Hermite-style column reduction only, independent of the SNF path.
/// Returns `None` when the quotient is infinite or exceeds `cap`.
pub fn coset_count_oracle(generators: usize, relation_rows: &IMat, cap: u64) -> Option<u64> {
    // Hermite normal form of the relation lattice (rows span)
    let mut m: Vec<Vec<i128>> = (0..relation_rows.rows)
        .map(|i| (0..generators).map(|j| relation_rows[(i, j)]).collect())
        .collect();
    let mut pivot_row = 0usize;
    let mut pivots: Vec<(usize, i128)> = Vec::new();
    for col in 0..generators {
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..m.len() {
                if m[r][col] != 0
                    && best.map_or(true, |b| m[r][col].abs() < m[b][col].abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            m.swap(pivot_row, b);
            if m[pivot_row][col] < 0 {
                for v in m[pivot_row].iter_mut() {
                    *v = -*v;
                }
            }
            let mut done = true;
            for r in pivot_row + 1..m.len() {
                let q = m[r][col].div_euclid(m[pivot_row][col]);
                if q != 0 {
                    for j in 0..generators {
                        m[r][j] -= q * m[pivot_row][j];
                    }
                }
                if m[r][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < m.len() && m[pivot_row][col] != 0 {
            pivots.push((col, m[pivot_row][col]));
            pivot_row += 1;
        }
    }
    if pivots.len() < generators {
        return None; // free part, infinite quotient
    }
    let mut order: u64 = 1;
    for &(_, d) in &pivots {
        order = order.checked_mul(d as u64)?;
        if order > cap {
            return None;
        }
    }
    Some(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_examples() {
        let g = abelian_group_from_relations(1, &IMat::from_rows(vec![vec![2]]));
        assert_eq!(g, PresentedGroup::torsion_only(vec![2]));
        let g = abelian_group_from_relations(2, &IMat::from_rows(vec![vec![2, 0]]));
        assert_eq!(g.torsion, vec![2]);
        assert_eq!(g.rank, 1);
        let g = abelian_group_from_relations(2, &IMat::zeros(0, 2));
        assert_eq!(g, PresentedGroup::free(2));
    }

    #[test]
    fn coset_oracle_agrees() {
        let cases = vec![
            (1, vec![vec![2]]),
            (2, vec![vec![2, 0], vec![0, 3]]),
            (2, vec![vec![2, 4], vec![6, 8]]),
            (3, vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]),
        ];
        for (gens, rows) in cases {
            let rel = IMat::from_rows(rows);
            let g = abelian_group_from_relations(gens, &rel);
            let order: u64 = g.torsion.iter().product();
            if g.rank == 0 {
                assert_eq!(coset_count_oracle(gens, &rel, 10_000), Some(order));
            } else {
                assert_eq!(coset_count_oracle(gens, &rel, 10_000), None);
            }
        }
    }

    #[test]
    fn coords_and_maps() {
        // Z^2 / (2, 0) = Z/2 + Z
        let pres = QuotientPresentation::new(2, &IMat::from_rows(vec![vec![2, 0]]));
        assert_eq!(pres.group().torsion, vec![2]);
        assert_eq!(pres.group().rank, 1);
        // (2, 0) is the zero class, (1, 0) is not
        assert!(pres.is_zero_class(&[2, 0]));
        assert!(!pres.is_zero_class(&[1, 0]));
        let id = PresentedMap::from_ambient(&pres, &pres, &IMat::identity(2));
        assert!(id.is_identity(&pres));
        // negation on the torsion factor is the identity there only for 2-torsion
        let neg = PresentedMap::from_ambient(
            &pres,
            &pres,
            &IMat::from_rows(vec![vec![-1, 0], vec![0, 1]]),
        );
        assert!(neg.is_identity(&pres));
    }
}
