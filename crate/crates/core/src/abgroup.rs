//! Finitely generated abelian groups as direct sums of cyclic factors.

use crate::imat::IMat;
use crate::snf::{self, kernel_basis, smith_normal_form, solve_congruence, unimodular_inverse};

/// Element of a [`FinAbGroup`], one coordinate per cyclic factor.
pub type Elem = Vec<i64>;

/// Direct sum of cyclic groups. `orders[i] == 0` encodes an infinite cyclic
/// factor; coordinates are kept canonical, `0 <= x < order` on finite factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAbGroup {
    orders: Vec<u64>,
}

impl FinAbGroup {
    pub fn new(orders: Vec<u64>) -> Self {
        FinAbGroup { orders }
    }

    pub fn trivial() -> Self {
        FinAbGroup { orders: vec![] }
    }

    pub fn cyclic(m: u64) -> Self {
        if m == 1 {
            Self::trivial()
        } else {
            FinAbGroup { orders: vec![m] }
        }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        FinAbGroup { orders }
    }

    /// n-fold direct sum of `self`.
    pub fn power(&self, n: usize) -> FinAbGroup {
        let mut orders = Vec::with_capacity(self.orders.len() * n);
        for _ in 0..n {
            orders.extend_from_slice(&self.orders);
        }
        FinAbGroup { orders }
    }

    /// Number of elements; `None` when some factor is infinite.
    pub fn card(&self) -> Option<u128> {
        let mut n: u128 = 1;
        for &o in &self.orders {
            if o == 0 {
                return None;
            }
            n = n.checked_mul(o as u128)?;
        }
        Some(n)
    }

    pub fn is_finite(&self) -> bool {
        self.orders.iter().all(|&o| o != 0)
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.orders.len()]
    }

    pub fn reduce(&self, mut x: Elem) -> Elem {
        for (xi, &o) in x.iter_mut().zip(&self.orders) {
            if o != 0 {
                *xi = xi.rem_euclid(o as i64);
            }
        }
        x
    }

    pub fn reduce_wide(&self, x: &[i128]) -> Elem {
        x.iter()
            .zip(&self.orders)
            .map(|(&xi, &o)| if o == 0 { xi as i64 } else { xi.rem_euclid(o as i128) as i64 })
            .collect()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        self.reduce(a.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    pub fn scale(&self, k: i64, a: &Elem) -> Elem {
        self.reduce_wide(&a.iter().map(|&x| k as i128 * x as i128).collect::<Vec<_>>())
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn generator(&self, i: usize) -> Elem {
        let mut e = self.zero();
        e[i] = 1;
        if self.orders[i] == 1 {
            e[i] = 0;
        }
        e
    }

    /// Mixed-radix index of a canonical element; requires a finite group.
    pub fn index_of(&self, a: &Elem) -> u128 {
        let mut idx: u128 = 0;
        for (xi, &o) in a.iter().zip(&self.orders) {
            debug_assert!(o != 0 && *xi >= 0 && (*xi as u64) < o);
            idx = idx * o as u128 + *xi as u128;
        }
        idx
    }

    pub fn elem_at(&self, mut idx: u128) -> Elem {
        let mut out = vec![0i64; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            let o = self.orders[i] as u128;
            out[i] = (idx % o) as i64;
            idx /= o;
        }
        out
    }

    /// Iterates every element; panics on infinite groups.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        let n = self.card().expect("infinite group");
        (0..n).map(move |i| self.elem_at(i))
    }

    /// Canonical invariant factors (each dividing the next, 1s dropped) plus
    /// free rank. Isomorphism-invariant form used for comparisons.
    pub fn invariant_factors(&self) -> (Vec<u64>, usize) {
        let n = self.orders.len();
        let mut rel = IMat::zeros(n, n);
        let mut free = 0;
        for (i, &o) in self.orders.iter().enumerate() {
            if o == 0 {
                free += 1;
            }
            rel[(i, i)] = o as i128;
        }
        let snf = smith_normal_form(&rel);
        let tors: Vec<u64> =
            snf.diagonal().into_iter().filter(|&d| d > 1).map(|d| d as u64).collect();
        (tors, free)
    }
}

/// Homomorphism between [`FinAbGroup`]s, an integer matrix acting on
/// coordinate columns.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: FinAbGroup,
    pub target: FinAbGroup,
    pub matrix: IMat,
}

impl GroupHom {
    /// Builds and validates: each source generator's image must be annihilated
    /// by the generator's order in the target.
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: IMat) -> Result<Self, String> {
        if matrix.rows != target.rank() || matrix.cols != source.rank() {
            return Err(format!(
                "matrix shape {}x{} does not match target rank {} / source rank {}",
                matrix.rows,
                matrix.cols,
                target.rank(),
                source.rank()
            ));
        }
        for j in 0..source.rank() {
            let o = source.orders()[j];
            if o == 0 {
                continue;
            }
            for i in 0..target.rank() {
                let v = matrix[(i, j)] * o as i128;
                let to = target.orders()[i];
                let ok = if to == 0 { v == 0 } else { v % to as i128 == 0 };
                if !ok {
                    return Err(format!("generator {j} image violates target relations"));
                }
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), matrix: IMat::identity(g.rank()) }
    }

    pub fn zero(source: &FinAbGroup, target: &FinAbGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IMat::zeros(target.rank(), source.rank()),
        }
    }

    /// Hom from a list of generator images.
    pub fn from_images(
        source: &FinAbGroup,
        target: &FinAbGroup,
        images: &[Elem],
    ) -> Result<Self, String> {
        assert_eq!(images.len(), source.rank());
        let mut m = IMat::zeros(target.rank(), source.rank());
        for (j, img) in images.iter().enumerate() {
            for i in 0..target.rank() {
                m[(i, j)] = img[i] as i128;
            }
        }
        GroupHom::new(source.clone(), target.clone(), m)
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        let wide: Vec<i128> = x.iter().map(|&v| v as i128).collect();
        self.target.reduce_wide(&self.matrix.apply(&wide))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupHom) -> GroupHom {
        assert_eq!(other.target.orders(), self.source.orders(), "composition mismatch");
        GroupHom {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn add(&self, other: &GroupHom) -> GroupHom {
        assert_eq!(self.source.orders(), other.source.orders());
        assert_eq!(self.target.orders(), other.target.orders());
        let mut m = self.matrix.clone();
        for i in 0..m.rows {
            for j in 0..m.cols {
                m[(i, j)] += other.matrix[(i, j)];
            }
        }
        GroupHom { source: self.source.clone(), target: self.target.clone(), matrix: m }
    }

    /// Equality as maps: columns agree modulo the target relations.
    pub fn eq_as_maps(&self, other: &GroupHom) -> bool {
        if self.source.orders() != other.source.orders()
            || self.target.orders() != other.target.orders()
        {
            return false;
        }
        for j in 0..self.matrix.cols {
            for i in 0..self.matrix.rows {
                let d = self.matrix[(i, j)] - other.matrix[(i, j)];
                let o = self.target.orders()[i];
                let ok = if o == 0 { d == 0 } else { d % o as i128 == 0 };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// First source generator on which the two maps disagree, for reports.
    pub fn first_difference(&self, other: &GroupHom) -> Option<usize> {
        (0..self.matrix.cols).find(|&j| {
            (0..self.matrix.rows).any(|i| {
                let d = self.matrix[(i, j)] - other.matrix[(i, j)];
                let o = self.target.orders()[i];
                if o == 0 {
                    d != 0
                } else {
                    d % o as i128 != 0
                }
            })
        })
    }

    /// Solves `self(y) = x`; `None` if `x` is not in the image.
    pub fn preimage(&self, x: &Elem) -> Option<Elem> {
        let b: Vec<i128> = x.iter().map(|&v| v as i128).collect();
        solve_congruence(&self.matrix, self.target.orders(), &b)
            .map(|y| self.source.reduce_wide(&y))
    }

    /// True when the map is a bijection.
    pub fn is_isomorphism(&self) -> bool {
        if self.source.card() != self.target.card() {
            return false;
        }
        let (sub, _) = kernel_subgroup(self);
        sub.card() == Some(1)
    }
}

/// Kernel of a hom as an abstract group plus its embedding into the source.
///
/// Works lattice-wise: the kernel is `L / D ℤ^r` where `L` is the preimage of
/// the target relation lattice and `D` holds the source orders.
pub fn kernel_subgroup(h: &GroupHom) -> (FinAbGroup, GroupHom) {
    let src = &h.source;
    let r = src.rank();
    // basis of L = { x : h(x) ≡ 0 mod target orders }
    let finite: Vec<usize> = (0..h.target.rank()).filter(|&i| h.target.orders()[i] != 0).collect();
    let mut aug = IMat::zeros(h.target.rank(), r + finite.len());
    for i in 0..h.target.rank() {
        for j in 0..r {
            aug[(i, j)] = h.matrix[(i, j)];
        }
    }
    for (t, &i) in finite.iter().enumerate() {
        aug[(i, r + t)] = h.target.orders()[i] as i128;
    }
    let full_kernel = kernel_basis(&aug);
    let mut basis_gen = IMat::zeros(r, full_kernel.cols);
    for j in 0..full_kernel.cols {
        for i in 0..r {
            basis_gen[(i, j)] = full_kernel[(i, j)];
        }
    }
    // reduce the generating set to an honest basis of L
    let snf_b = smith_normal_form(&basis_gen);
    let vinv_cols = snf_b.rank;
    let mut basis = IMat::zeros(r, vinv_cols);
    {
        // columns of u^{-1} scaled by the diagonal span L
        let uinv = unimodular_inverse(&snf_b.u);
        for j in 0..vinv_cols {
            for i in 0..r {
                basis[(i, j)] = uinv[(i, j)] * snf_b.s[(j, j)];
            }
        }
    }
    // relations: express the source order vectors in the basis
    let t = basis.cols;
    let mut rel_cols: Vec<Vec<i128>> = Vec::new();
    for (i, &o) in src.orders().iter().enumerate() {
        if o == 0 {
            continue;
        }
        let mut e = vec![0i128; r];
        e[i] = o as i128;
        let y = snf::solve_integer(&basis, &e).expect("order relation must lie in the lattice");
        rel_cols.push(y);
    }
    let mut x = IMat::zeros(t, rel_cols.len());
    for (j, col) in rel_cols.iter().enumerate() {
        for i in 0..t {
            x[(i, j)] = col[i];
        }
    }
    let snf_x = smith_normal_form(&x);
    let uinv = unimodular_inverse(&snf_x.u);
    // keep factors with order != 1
    let mut kept: Vec<(usize, u64)> = Vec::new();
    for i in 0..t {
        let d = if i < snf_x.rank { snf_x.s[(i, i)] } else { 0 };
        if d != 1 {
            kept.push((i, d as u64));
        }
    }
    let sub = FinAbGroup::new(kept.iter().map(|&(_, d)| d).collect());
    let mut embed = IMat::zeros(r, kept.len());
    for (jj, &(i, _)) in kept.iter().enumerate() {
        let gen_in_basis = uinv.col(i);
        let amb = basis.apply(&gen_in_basis);
        for row in 0..r {
            embed[(row, jj)] = amb[row];
        }
    }
    let embed = GroupHom::new(sub.clone(), src.clone(), embed).expect("kernel embedding");
    (sub, embed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let g = FinAbGroup::new(vec![4, 0]);
        let a = vec![3, -2];
        let b = vec![2, 5];
        assert_eq!(g.add(&a, &b), vec![1, 3]);
        assert_eq!(g.neg(&a), vec![1, 2]);
        assert_eq!(g.scale(3, &vec![3, 1]), vec![1, 3]);
        assert_eq!(g.invariant_factors(), (vec![4], 1));
    }

    #[test]
    fn indexing_roundtrip() {
        let g = FinAbGroup::new(vec![3, 5]);
        for i in 0..15u128 {
            assert_eq!(g.index_of(&g.elem_at(i)), i);
        }
    }

    #[test]
    fn hom_validation() {
        let z2 = FinAbGroup::cyclic(2);
        let z4 = FinAbGroup::cyclic(4);
        // Z/2 -> Z/4 sending 1 to 1 is not a hom
        assert!(GroupHom::from_images(&z2, &z4, &[vec![1]]).is_err());
        // 1 -> 2 is
        let h = GroupHom::from_images(&z2, &z4, &[vec![2]]).unwrap();
        assert_eq!(h.apply(&vec![1]), vec![2]);
    }

    #[test]
    fn kernel_of_doubling() {
        // x -> 2x on Z/4 has kernel Z/2 embedded as {0, 2}
        let z4 = FinAbGroup::cyclic(4);
        let h = GroupHom::from_images(&z4, &z4, &[vec![2]]).unwrap();
        let (sub, embed) = kernel_subgroup(&h);
        assert_eq!(sub.invariant_factors(), (vec![2], 0));
        assert_eq!(embed.apply(&vec![1]), vec![2]);
    }

    #[test]
    fn kernel_of_sum_map() {
        // (x, y) -> x + y on Z/3 ⊕ Z/3 has kernel Z/3
        let g = FinAbGroup::new(vec![3, 3]);
        let h =
            GroupHom::new(g.clone(), FinAbGroup::cyclic(3), IMat::from_rows(vec![vec![1, 1]]))
                .unwrap();
        let (sub, embed) = kernel_subgroup(&h);
        assert_eq!(sub.invariant_factors(), (vec![3], 0));
        let img = embed.apply(&vec![1]);
        assert_eq!((img[0] + img[1]).rem_euclid(3), 0);
    }

    #[test]
    fn preimages() {
        let z6 = FinAbGroup::cyclic(6);
        let h = GroupHom::from_images(&z6, &z6, &[vec![2]]).unwrap();
        assert_eq!(h.preimage(&vec![4]).map(|y| h.apply(&y)), Some(vec![4]));
        assert_eq!(h.preimage(&vec![3]), None);
    }
}
