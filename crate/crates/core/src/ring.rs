//! Finite rings with anti-involution, given by structure constants on the
//! additive generators.

use crate::abgroup::{Elem, FinAbGroup, GroupHom};
use crate::error::{Error, Result};
use crate::group::FinGroup;
use crate::imat::IMat;
use crate::report::{CheckReport, Report};
use crate::snf::solve_congruence;

/// A ring whose additive group is a f.g. abelian group, with multiplication
/// given bilinearly by structure constants and an additive anti-involution w.
#[derive(Clone, Debug)]
pub struct FinRingInv {
    pub add: FinAbGroup,
    /// sc[i][j] = e_i * e_j
    sc: Vec<Vec<Elem>>,
    pub one: Elem,
    pub w: GroupHom,
}

impl FinRingInv {
    /// Validates bilinearity against the orders, associativity and unitality
    /// on generators, and the anti-involution axioms on generators. Because
    /// multiplication is bilinear and w additive, generator-level checks are
    /// exact.
    pub fn new(add: FinAbGroup, sc: Vec<Vec<Elem>>, one: Elem, w: GroupHom) -> Result<Self> {
        let r = add.rank();
        if sc.len() != r || sc.iter().any(|row| row.len() != r) {
            return Err(Error::Invalid("structure constant table shape".into()));
        }
        for i in 0..r {
            for j in 0..r {
                for (t, &o) in add.orders().iter().enumerate() {
                    let v = sc[i][j][t] as i128;
                    for &of in [add.orders()[i], add.orders()[j]].iter() {
                        if of == 0 {
                            continue;
                        }
                        let prod = v * of as i128;
                        let ok = if o == 0 { prod == 0 } else { prod % o as i128 == 0 };
                        if !ok {
                            return Err(Error::Invalid(format!(
                                "structure constants not bilinear at ({i},{j})"
                            )));
                        }
                    }
                }
            }
        }
        let ring = FinRingInv { add, sc, one, w };
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let ei = ring.add.generator(i);
                    let ej = ring.add.generator(j);
                    let ek = ring.add.generator(k);
                    let lhs = ring.mul(&ring.mul(&ei, &ej), &ek);
                    let rhs = ring.mul(&ei, &ring.mul(&ej, &ek));
                    if lhs != rhs {
                        return Err(Error::Invalid(format!(
                            "multiplication not associative at generators ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        for i in 0..r {
            let e = ring.add.generator(i);
            if ring.mul(&ring.one, &e) != e || ring.mul(&e, &ring.one) != e {
                return Err(Error::Invalid(format!("unit fails at generator {i}")));
            }
        }
        let rep = check_anti_involution(&ring);
        if !rep.passed() {
            let why = rep.first_failure().map(|c| c.name.clone()).unwrap_or_default();
            return Err(Error::InvalidAntiInvolution(why));
        }
        Ok(ring)
    }

    /// Builds without validating; for constructions that are correct by
    /// design and verified in bulk elsewhere.
    pub fn new_unchecked(add: FinAbGroup, sc: Vec<Vec<Elem>>, one: Elem, w: GroupHom) -> Self {
        FinRingInv { add, sc, one, w }
    }

    pub fn rank(&self) -> usize {
        self.add.rank()
    }

    pub fn card(&self) -> Option<u128> {
        self.add.card()
    }

    pub fn zero(&self) -> Elem {
        self.add.zero()
    }

    pub fn generator_product(&self, i: usize, j: usize) -> &Elem {
        &self.sc[i][j]
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let r = self.rank();
        let mut acc = vec![0i128; r];
        for i in 0..r {
            if x[i] == 0 {
                continue;
            }
            for j in 0..r {
                if y[j] == 0 {
                    continue;
                }
                let c = x[i] as i128 * y[j] as i128;
                for t in 0..r {
                    acc[t] += c * self.sc[i][j][t] as i128;
                }
            }
        }
        self.add.reduce_wide(&acc)
    }

    pub fn winv(&self, x: &Elem) -> Elem {
        self.w.apply(x)
    }

    /// Matrix of left multiplication by x, as an endomorphism of the additive
    /// group.
    pub fn left_mul_matrix(&self, x: &Elem) -> IMat {
        let r = self.rank();
        let mut m = IMat::zeros(r, r);
        for j in 0..r {
            let col = self.mul(x, &self.add.generator(j));
            for i in 0..r {
                m[(i, j)] = col[i] as i128;
            }
        }
        m
    }

    /// Two-sided inverse, if any. Decided by solving the linear system
    /// `x * y = 1` over the additive group; a finite ring has no one-sided
    /// units, and the two-sided identity is asserted.
    pub fn inverse(&self, x: &Elem) -> Option<Elem> {
        let m = self.left_mul_matrix(x);
        let b: Vec<i128> = self.one.iter().map(|&v| v as i128).collect();
        let y = solve_congruence(&m, self.add.orders(), &b)?;
        let y = self.add.reduce_wide(&y);
        if self.mul(&y, x) != self.one || self.mul(x, &y) != self.one {
            return None;
        }
        Some(y)
    }

    pub fn is_unit(&self, x: &Elem) -> bool {
        if let Some(p) = self.prime_carrier() {
            return gauss_rank_mod_p(&self.left_mul_matrix(x), p) == self.rank();
        }
        self.inverse(x).is_some()
    }

    /// When every additive order equals one prime p, invertibility reduces to
    /// a rank computation mod p.
    pub fn prime_carrier(&self) -> Option<u64> {
        let &first = self.add.orders().first()?;
        if self.add.orders().iter().any(|&o| o != first) || !is_prime(first) {
            return None;
        }
        Some(first)
    }

    /// All units, in element-index order. Requires a finite carrier.
    pub fn units(&self) -> Vec<Elem> {
        self.add.elements().filter(|x| self.is_unit(x)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank();
        for i in 0..r {
            for j in 0..i {
                if self.sc[i][j] != self.sc[j][i] {
                    return false;
                }
            }
        }
        true
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Row rank of an integer matrix modulo a prime.
pub fn gauss_rank_mod_p(m: &IMat, p: u64) -> usize {
    let p = p as i128;
    let mut a: Vec<Vec<i128>> = (0..m.rows)
        .map(|i| (0..m.cols).map(|j| m[(i, j)].rem_euclid(p)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(piv) = (rank..m.rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = mod_inverse(a[rank][col], p);
        for v in a[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..m.rows {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col];
                for j in col..m.cols {
                    a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

fn mod_inverse(a: i128, p: i128) -> i128 {
    // extended euclid; p prime, a nonzero mod p
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p, a.rem_euclid(p));
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p)
}

/// Z/m with the identity involution.
pub fn zmod(m: u64) -> FinRingInv {
    let add = FinAbGroup::cyclic(m);
    if add.rank() == 0 {
        // the zero ring
        return FinRingInv::new_unchecked(add.clone(), vec![], vec![], GroupHom::identity(&add));
    }
    let sc = vec![vec![vec![1i64]]];
    FinRingInv::new_unchecked(add.clone(), sc, vec![1], GroupHom::identity(&add))
}

/// n x n matrices over `base`, with the anti-involution
/// `w(A)_{ij} = w(A_{ji})`.
pub fn matrix_ring(base: &FinRingInv, n: usize) -> FinRingInv {
    let r = base.rank();
    let rank = n * n * r;
    let add = base.add.power(n * n);
    // generator index (i, j, t) -> i * n * r + j * r + t
    let slot = |i: usize, j: usize, t: usize| i * n * r + j * r + t;
    let mut sc = vec![vec![vec![0i64; rank]; rank]; rank];
    for i in 0..n {
        for j in 0..n {
            for t in 0..r {
                for k in 0..n {
                    for l in 0..n {
                        for s in 0..r {
                            // (e_t E_ij)(e_s E_kl) = delta_{jk} (e_t e_s) E_il
                            if j != k {
                                continue;
                            }
                            let p = base.generator_product(t, s);
                            let row = &mut sc[slot(i, j, t)][slot(k, l, s)];
                            for (u, &c) in p.iter().enumerate() {
                                row[slot(i, l, u)] = c;
                            }
                        }
                    }
                }
            }
        }
    }
    let mut one = vec![0i64; rank];
    for i in 0..n {
        for (t, &c) in base.one.iter().enumerate() {
            one[slot(i, i, t)] = c;
        }
    }
    let mut wmat = IMat::zeros(rank, rank);
    for i in 0..n {
        for j in 0..n {
            for t in 0..r {
                // w(e_t E_ij) = w(e_t) E_ji
                let wt = base.winv(&base.add.generator(t));
                for (u, &c) in wt.iter().enumerate() {
                    wmat[(slot(j, i, u), slot(i, j, t))] = c as i128;
                }
            }
        }
    }
    let w = GroupHom::new(add.clone(), add.clone(), wmat).expect("matrix involution");
    FinRingInv::new_unchecked(add, sc, one, w)
}

/// Group ring `base[pi]` with involution `w(r g) = w(r) tau(g)`.
///
/// `tau` must be an anti-automorphism of `pi` with square the identity
/// (by default, inversion).
pub fn group_algebra(base: &FinRingInv, pi: &FinGroup, tau: &[usize]) -> Result<FinRingInv> {
    let n = pi.order();
    if tau.len() != n {
        return Err(Error::InvalidAntiInvolution("tau has the wrong length".into()));
    }
    for g in 0..n {
        if tau[tau[g]] != g {
            return Err(Error::InvalidAntiInvolution(format!("tau^2 != id at {g}")));
        }
        for h in 0..n {
            if tau[pi.mul(g, h)] != pi.mul(tau[h], tau[g]) {
                return Err(Error::InvalidAntiInvolution(format!(
                    "tau not an anti-homomorphism at ({g},{h})"
                )));
            }
        }
    }
    let r = base.rank();
    let rank = n * r;
    let add = base.add.power(n);
    let slot = |g: usize, t: usize| g * r + t;
    let mut sc = vec![vec![vec![0i64; rank]; rank]; rank];
    for g in 0..n {
        for t in 0..r {
            for h in 0..n {
                for s in 0..r {
                    let p = base.generator_product(t, s);
                    let gh = pi.mul(g, h);
                    let row = &mut sc[slot(g, t)][slot(h, s)];
                    for (u, &c) in p.iter().enumerate() {
                        row[slot(gh, u)] = c;
                    }
                }
            }
        }
    }
    let mut one = vec![0i64; rank];
    for (t, &c) in base.one.iter().enumerate() {
        one[slot(pi.id(), t)] = c;
    }
    let mut wmat = IMat::zeros(rank, rank);
    for g in 0..n {
        for t in 0..r {
            let wt = base.winv(&base.add.generator(t));
            for (u, &c) in wt.iter().enumerate() {
                wmat[(slot(tau[g], u), slot(g, t))] = c as i128;
            }
        }
    }
    let w = GroupHom::new(add.clone(), add.clone(), wmat)
        .map_err(|e| Error::Invalid(format!("group ring involution: {e}")))?;
    Ok(FinRingInv::new_unchecked(add, sc, one, w))
}

/// Verifies `w^2 = id`, `w(1) = 1` and `w(xy) = w(y) w(x)`. Pairs are checked
/// exhaustively when the carrier allows at most `cap` pairs; above that the
/// check runs on additive generators, which is exact by bilinearity.
pub fn check_anti_involution_capped(ring: &FinRingInv, cap: u128) -> Report {
    let mut report = Report::new("anti-involution");
    let id = GroupHom::identity(&ring.add);
    let ww = ring.w.compose(&ring.w);
    report.push(if ww.eq_as_maps(&id) {
        CheckReport::pass("w∘w = id", ring.rank() as u64)
    } else {
        let j = ww.first_difference(&id).unwrap_or(0);
        CheckReport::fail("w∘w = id", format!("generator {j}"), ring.rank() as u64)
    });
    report.push(if ring.winv(&ring.one) == ring.one {
        CheckReport::pass("w(1) = 1", 1)
    } else {
        CheckReport::fail("w(1) = 1", format!("w(1) = {:?}", ring.winv(&ring.one)), 1)
    });

    let pairs = ring.card().map(|c| c * c);
    match pairs {
        Some(p) if p <= cap => {
            let mut checks = 0u64;
            let mut witness = None;
            'outer: for x in ring.add.elements() {
                for y in ring.add.elements() {
                    checks += 1;
                    let lhs = ring.winv(&ring.mul(&x, &y));
                    let rhs = ring.mul(&ring.winv(&y), &ring.winv(&x));
                    if lhs != rhs {
                        witness = Some(format!("x = {x:?}, y = {y:?}"));
                        break 'outer;
                    }
                }
            }
            report.push(match witness {
                None => CheckReport::pass("w(xy) = w(y)w(x)", checks),
                Some(wt) => CheckReport::fail("w(xy) = w(y)w(x)", wt, checks),
            });
        }
        _ => {
            let r = ring.rank();
            let mut witness = None;
            'outer2: for i in 0..r {
                for j in 0..r {
                    let x = ring.add.generator(i);
                    let y = ring.add.generator(j);
                    let lhs = ring.winv(&ring.mul(&x, &y));
                    let rhs = ring.mul(&ring.winv(&y), &ring.winv(&x));
                    if lhs != rhs {
                        witness = Some(format!("generators ({i},{j})"));
                        break 'outer2;
                    }
                }
            }
            report.push(match witness {
                None => CheckReport::pass("w(xy) = w(y)w(x) on generators", (r * r) as u64),
                Some(wt) => {
                    CheckReport::fail("w(xy) = w(y)w(x) on generators", wt, (r * r) as u64)
                }
            });
        }
    }
    report
}

pub fn check_anti_involution(ring: &FinRingInv) -> Report {
    check_anti_involution_capped(ring, 10_000_000)
}

/// Square matrix over a [`FinRingInv`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    pub n: usize,
    /// row-major entries
    pub entries: Vec<Elem>,
}

impl RMatrix {
    pub fn from_entries(n: usize, entries: Vec<Elem>) -> Self {
        assert_eq!(entries.len(), n * n);
        RMatrix { n, entries }
    }

    pub fn identity(ring: &FinRingInv, n: usize) -> Self {
        let mut entries = vec![ring.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = ring.one.clone();
        }
        RMatrix { n, entries }
    }

    pub fn at(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, ring: &FinRingInv, other: &RMatrix) -> RMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = vec![ring.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                if ring.add.is_zero(self.at(i, k)) {
                    continue;
                }
                for j in 0..n {
                    let p = ring.mul(self.at(i, k), other.at(k, j));
                    out[i * n + j] = ring.add.add(&out[i * n + j], &p);
                }
            }
        }
        RMatrix { n, entries: out }
    }

    /// Conjugate transpose `w(A)_{ij} = w(A_{ji})`.
    pub fn winv(&self, ring: &FinRingInv) -> RMatrix {
        let n = self.n;
        let mut out = vec![ring.zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = ring.winv(self.at(j, i));
            }
        }
        RMatrix { n, entries: out }
    }

    /// Flat coordinates in the additive group `ring.add^(n^2)`.
    pub fn flatten(&self) -> Elem {
        self.entries.concat()
    }

    pub fn unflatten(ring: &FinRingInv, n: usize, flat: &Elem) -> RMatrix {
        let r = ring.rank();
        let entries = (0..n * n).map(|k| flat[k * r..(k + 1) * r].to_vec()).collect();
        RMatrix { n, entries }
    }
}

/// Two-sided inverse of a matrix over a finite ring.
///
/// The matrix is treated as an element of the matrix ring; invertibility is
/// decided by linear solving over the additive group.
pub fn invert_matrix(ring: &FinRingInv, m: &RMatrix) -> Result<RMatrix> {
    let mat_ring = matrix_ring(ring, m.n);
    let flat = m.flatten();
    match mat_ring.inverse(&flat) {
        Some(inv) => Ok(RMatrix::unflatten(ring, m.n, &inv)),
        None => Err(Error::NotUnit(format!("{:?}", m.entries))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FinGroup;

    #[test]
    fn zmod_basics() {
        let r = zmod(5);
        assert_eq!(r.mul(&vec![3], &vec![4]), vec![2]);
        assert_eq!(r.inverse(&vec![2]), Some(vec![3]));
        assert_eq!(r.inverse(&vec![0]), None);
        assert_eq!(r.units().len(), 4);
    }

    #[test]
    fn zmod_edge_cases() {
        let z4 = zmod(4);
        assert_eq!(z4.inverse(&vec![2]), None);
        assert_eq!(z4.inverse(&vec![3]), Some(vec![3]));
        let z1 = zmod(1);
        assert_eq!(z1.card(), Some(1));
    }

    #[test]
    fn matrix_ring_m2_f3() {
        let f3 = zmod(3);
        let m2 = matrix_ring(&f3, 2);
        assert_eq!(m2.card(), Some(81));
        // transpose is an anti-involution
        assert!(check_anti_involution(&m2).passed());
        // the identity map is not: exhibit a noncommuting pair
        let identity_inv = FinRingInv::new_unchecked(
            m2.add.clone(),
            (0..4).map(|i| (0..4).map(|j| m2.generator_product(i, j).clone()).collect()).collect(),
            m2.one.clone(),
            GroupHom::identity(&m2.add),
        );
        let rep = check_anti_involution(&identity_inv);
        assert!(!rep.passed());
    }

    #[test]
    fn anti_involution_id_on_commutative() {
        assert!(check_anti_involution(&zmod(3)).passed());
    }

    #[test]
    fn invert_matrix_examples() {
        let f3 = zmod(3);
        // permutation involution
        let swap = RMatrix::from_entries(2, vec![vec![0], vec![1], vec![1], vec![0]]);
        assert_eq!(invert_matrix(&f3, &swap).unwrap(), swap);
        // unipotent: [[1,1],[0,1]]^-1 = [[1,2],[0,1]], confirmed by exhaustive
        // search over all 81 candidates
        let u = RMatrix::from_entries(2, vec![vec![1], vec![1], vec![0], vec![1]]);
        let expect = RMatrix::from_entries(2, vec![vec![1], vec![2], vec![0], vec![1]]);
        assert_eq!(invert_matrix(&f3, &u).unwrap(), expect);
        let m2 = matrix_ring(&f3, 2);
        let mut found = None;
        for cand in m2.add.elements() {
            if m2.mul(&cand, &u.flatten()) == m2.one && m2.mul(&u.flatten(), &cand) == m2.one {
                found = Some(cand);
                break;
            }
        }
        assert_eq!(found, Some(expect.flatten()));
        // singular: all 81 candidates fail
        let s = RMatrix::from_entries(2, vec![vec![1], vec![1], vec![1], vec![1]]);
        assert!(matches!(invert_matrix(&f3, &s), Err(Error::NotUnit(_))));
        assert!(!m2.add.elements().any(|c| m2.mul(&c, &s.flatten()) == m2.one));
    }

    #[test]
    fn group_algebra_examples() {
        let f3 = zmod(3);
        let c2 = FinGroup::cyclic(2);
        let tau: Vec<usize> = (0..2).map(|g| c2.inv(g)).collect();
        let r = group_algebra(&f3, &c2, &tau).unwrap();
        assert_eq!(r.card(), Some(9));
        // every element of Z/2 is self-inverse, so w fixes both basis vectors
        assert!(r.w.eq_as_maps(&GroupHom::identity(&r.add)));
        // unit is 1*e
        assert_eq!(r.one, vec![1, 0]);

        let c3 = FinGroup::cyclic(3);
        let tau3: Vec<usize> = (0..3).map(|g| c3.inv(g)).collect();
        let r3 = group_algebra(&f3, &c3, &tau3).unwrap();
        // inversion swaps the basis elements g and g^2
        assert_eq!(r3.winv(&vec![0, 1, 0]), vec![0, 0, 1]);
        assert_eq!(r3.winv(&vec![0, 0, 1]), vec![0, 1, 0]);
        assert!(check_anti_involution(&r3).passed());
    }

    #[test]
    fn group_algebra_rejects_bad_tau() {
        let f3 = zmod(3);
        let c3 = FinGroup::cyclic(3);
        // the identity is not an anti-involution-compatible choice here: it is
        // a homomorphism, and for abelian groups also an anti-homomorphism,
        // so use a genuinely broken tau instead
        let bad = vec![0, 0, 0];
        assert!(matches!(
            group_algebra(&f3, &c3, &bad),
            Err(Error::InvalidAntiInvolution(_))
        ));
    }
}
