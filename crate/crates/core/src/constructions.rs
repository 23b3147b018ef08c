//! The matrix and group-ring constructions on Hermitian Mackey functors.

use crate::abgroup::{Elem, FinAbGroup, GroupHom};
use crate::error::{Error, Result};
use crate::group::FinGroup;
use crate::mackey::{check_herm_morphism, HermMackey, HermMorphism, MackeyZ2};
use crate::report::{CheckReport, Report};
use crate::ring::{group_algebra, matrix_ring, RMatrix};

/// Coordinate layout for the fix level of a matrix Mackey functor:
/// one under-level block per pair i < j (lexicographic), then one fix-level
/// block per diagonal slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatLayout {
    pub n: usize,
    pub ru: usize,
    pub rf: usize,
}

impl MatLayout {
    pub fn num_off(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn fix_rank(&self) -> usize {
        self.num_off() * self.ru + self.n * self.rf
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * self.n - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn off_range(&self, i: usize, j: usize) -> std::ops::Range<usize> {
        let base = self.pair_index(i, j) * self.ru;
        base..base + self.ru
    }

    pub fn diag_range(&self, i: usize) -> std::ops::Range<usize> {
        let base = self.num_off() * self.ru + i * self.rf;
        base..base + self.rf
    }

    pub fn off_entry(&self, b: &Elem, i: usize, j: usize) -> Elem {
        b[self.off_range(i, j)].to_vec()
    }

    pub fn diag_entry(&self, b: &Elem, i: usize) -> Elem {
        b[self.diag_range(i)].to_vec()
    }

    pub fn fix_group(&self, base: &HermMackey) -> FinAbGroup {
        let mut orders = Vec::with_capacity(self.fix_rank());
        for _ in 0..self.num_off() {
            orders.extend_from_slice(base.under().orders());
        }
        for _ in 0..self.n {
            orders.extend_from_slice(base.fix().orders());
        }
        FinAbGroup::new(orders)
    }
}

/// Restriction of a fix-level element to an n x n matrix over the under ring.
pub fn mat_restriction(base: &HermMackey, lay: &MatLayout, b: &Elem) -> RMatrix {
    let n = lay.n;
    let mut entries = vec![base.ring.zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            entries[i * n + j] = if i < j {
                lay.off_entry(b, i, j)
            } else if i > j {
                base.ring.winv(&lay.off_entry(b, j, i))
            } else {
                base.base.res.apply(&lay.diag_entry(b, i))
            };
        }
    }
    RMatrix::from_entries(n, entries)
}

/// Transfer of an n x n matrix over the under ring into the fix level.
pub fn mat_transfer(base: &HermMackey, lay: &MatLayout, a: &RMatrix) -> Elem {
    let mut out = vec![0i64; lay.fix_rank()];
    for i in 0..lay.n {
        for j in i + 1..lay.n {
            let v = base.under().add(a.at(i, j), &base.ring.winv(a.at(j, i)));
            out[lay.off_range(i, j)].copy_from_slice(&v);
        }
        let d = base.base.tr.apply(a.at(i, i));
        out[lay.diag_range(i)].copy_from_slice(&d);
    }
    out
}

/// The action of a matrix on a fix-level element: conjugation off the
/// diagonal, transfer plus the base action on the diagonal.
pub fn mat_action(base: &HermMackey, lay: &MatLayout, a: &RMatrix, b: &Elem) -> Elem {
    let ring = &base.ring;
    let n = lay.n;
    let rb = mat_restriction(base, lay, b);
    let conj = a.mul(ring, &rb).mul(ring, &a.winv(ring));
    let mut out = vec![0i64; lay.fix_rank()];
    for i in 0..n {
        for j in i + 1..n {
            out[lay.off_range(i, j)].copy_from_slice(conj.at(i, j));
        }
        let mut inner = ring.zero();
        for k in 0..n {
            for l in k + 1..n {
                let t = ring.mul(
                    &ring.mul(a.at(i, k), &lay.off_entry(b, k, l)),
                    &ring.winv(a.at(i, l)),
                );
                inner = base.under().add(&inner, &t);
            }
        }
        let mut diag = base.base.tr.apply(&inner);
        for k in 0..n {
            diag = base.fix().add(&diag, &base.act(a.at(i, k), &lay.diag_entry(b, k)));
        }
        out[lay.diag_range(i)].copy_from_slice(&diag);
    }
    out
}

/// A materialized matrix Mackey functor with its coordinate layout.
pub struct MatrixMackey {
    pub herm: HermMackey,
    pub layout: MatLayout,
}

/// Builds the Hermitian Mackey functor of n x n matrices over `base`.
pub fn matrix_mackey(base: &HermMackey, n: usize) -> Result<MatrixMackey> {
    if n == 0 {
        return Err(Error::Invalid("matrix dimension must be positive".into()));
    }
    let lay = MatLayout { n, ru: base.under().rank(), rf: base.fix().rank() };
    let ring = matrix_ring(&base.ring, n);
    let under = ring.add.clone();
    let fix = lay.fix_group(base);

    let res_images: Vec<Elem> = (0..fix.rank())
        .map(|k| mat_restriction(base, &lay, &fix.generator(k)).flatten())
        .collect();
    let res = GroupHom::from_images(&fix, &under, &res_images).map_err(Error::Invalid)?;
    let tr_images: Vec<Elem> = (0..under.rank())
        .map(|k| {
            let a = RMatrix::unflatten(&base.ring, n, &under.generator(k));
            mat_transfer(base, &lay, &a)
        })
        .collect();
    let tr = GroupHom::from_images(&under, &fix, &tr_images).map_err(Error::Invalid)?;
    let mk = MackeyZ2 { under: under.clone(), fix: fix.clone(), w: ring.w.clone(), res, tr };
    let base_cl = base.clone();
    let lay_cl = lay.clone();
    let herm = HermMackey::from_action_fn(mk, ring, |flat| {
        let a = RMatrix::unflatten(&base_cl.ring, n, flat);
        let images: Vec<Elem> = (0..fix.rank())
            .map(|k| mat_action(&base_cl, &lay_cl, &a, &fix.generator(k)))
            .collect();
        GroupHom::from_images(&fix, &fix, &images).expect("matrix action")
    })?;
    Ok(MatrixMackey { herm, layout: lay })
}

/// Coordinate layout for the fix level of a group Mackey functor: one
/// base-fix block per τ-fixed element of π, then one base-under block per
/// free τ-orbit, addressed by the section representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLayout {
    pub fixed_elems: Vec<usize>,
    pub orbit_reps: Vec<usize>,
    pub ru: usize,
    pub rf: usize,
}

impl GroupLayout {
    pub fn fix_rank(&self) -> usize {
        self.fixed_elems.len() * self.rf + self.orbit_reps.len() * self.ru
    }

    pub fn fixed_range(&self, g: usize) -> std::ops::Range<usize> {
        let k = self.fixed_elems.iter().position(|&x| x == g).expect("not a fixed element");
        k * self.rf..(k + 1) * self.rf
    }

    pub fn free_range(&self, rep: usize) -> std::ops::Range<usize> {
        let k = self.orbit_reps.iter().position(|&x| x == rep).expect("not a section rep");
        let base = self.fixed_elems.len() * self.rf + k * self.ru;
        base..base + self.ru
    }
}

/// A materialized group Mackey functor with its layout.
pub struct GroupMackey {
    pub herm: HermMackey,
    pub layout: GroupLayout,
    pub pi: FinGroup,
    pub tau: Vec<usize>,
}

/// Default section: the lexicographically least element of each free orbit.
pub fn default_section(pi: &FinGroup, tau: &[usize]) -> Vec<usize> {
    (0..pi.order()).filter(|&g| tau[g] != g && g < tau[g]).collect()
}

/// Builds the group Mackey functor `base[pi]` with the default section.
pub fn group_mackey(base: &HermMackey, pi: &FinGroup, tau: &[usize]) -> Result<GroupMackey> {
    group_mackey_with_section(base, pi, tau, &default_section(pi, tau))
}

/// Builds `base[pi]` with an explicit section of the free τ-orbits.
pub fn group_mackey_with_section(
    base: &HermMackey,
    pi: &FinGroup,
    tau: &[usize],
    section: &[usize],
) -> Result<GroupMackey> {
    build_group_mackey(base, pi, tau, section, false)
}

fn build_group_mackey(
    base: &HermMackey,
    pi: &FinGroup,
    tau: &[usize],
    section: &[usize],
    reverse_order: bool,
) -> Result<GroupMackey> {
    let ring = group_algebra(&base.ring, pi, tau)?;
    let fixed_elems: Vec<usize> = (0..pi.order()).filter(|&g| tau[g] == g).collect();
    let mut covered = vec![false; pi.order()];
    for &g in &fixed_elems {
        covered[g] = true;
    }
    for &x in section {
        if tau[x] == x || covered[x] || covered[tau[x]] {
            return Err(Error::SectionMismatch(format!("element {x} is not a valid rep")));
        }
        covered[x] = true;
        covered[tau[x]] = true;
    }
    if covered.iter().any(|&c| !c) {
        return Err(Error::SectionMismatch("section misses an orbit".into()));
    }
    let lay = GroupLayout {
        fixed_elems,
        orbit_reps: section.to_vec(),
        ru: base.under().rank(),
        rf: base.fix().rank(),
    };
    let under = ring.add.clone();
    let mut orders = Vec::with_capacity(lay.fix_rank());
    for _ in 0..lay.fixed_elems.len() {
        orders.extend_from_slice(base.fix().orders());
    }
    for _ in 0..lay.orbit_reps.len() {
        orders.extend_from_slice(base.under().orders());
    }
    let fix = FinAbGroup::new(orders);
    let ru = lay.ru;

    let reps = lay.orbit_reps.clone();
    let rep_of = move |g: usize| -> (usize, bool) {
        if reps.contains(&g) {
            (g, true)
        } else {
            (tau[g], false)
        }
    };
    let under_rank = under.rank();
    let under_slot = |g: usize, coords: &Elem| -> Elem {
        let mut out = vec![0i64; under_rank];
        out[g * ru..(g + 1) * ru].copy_from_slice(coords);
        out
    };

    // restriction: R(b h) = R(b) h on the fixed summand,
    // R(c x) = c s(x) + w(c) tau(s(x)) on the free summand
    let mut res_images: Vec<Elem> = Vec::with_capacity(fix.rank());
    for &g in &lay.fixed_elems {
        for k in 0..lay.rf {
            let r = base.base.res.apply(&base.fix().generator(k));
            res_images.push(under.reduce(under_slot(g, &r)));
        }
    }
    for &x in &lay.orbit_reps {
        for t in 0..ru {
            let c = base.under().generator(t);
            let a = under_slot(x, &c);
            let b = under_slot(tau[x], &base.ring.winv(&c));
            res_images.push(under.add(&a, &b));
        }
    }
    let res = GroupHom::from_images(&fix, &under, &res_images).map_err(Error::Invalid)?;

    // transfer: T(a g) = T(a) g for fixed g, a [g] on section reps,
    // w(a) [rep] otherwise
    let mut tr_images: Vec<Elem> = Vec::with_capacity(under.rank());
    for g in 0..pi.order() {
        for t in 0..ru {
            let c = base.under().generator(t);
            let mut img = vec![0i64; fix.rank()];
            if tau[g] == g {
                let v = base.base.tr.apply(&c);
                img[lay.fixed_range(g)].copy_from_slice(&v);
            } else {
                let (rep, is_rep) = rep_of(g);
                let v = if is_rep { c } else { base.ring.winv(&c) };
                img[lay.free_range(rep)].copy_from_slice(&v);
            }
            tr_images.push(fix.reduce(img));
        }
    }
    let tr = GroupHom::from_images(&under, &fix, &tr_images).map_err(Error::Invalid)?;

    let mk = MackeyZ2 {
        under: under.clone(),
        fix: fix.clone(),
        w: ring.w.clone(),
        res: res.clone(),
        tr: tr.clone(),
    };

    // action of a single group-ring generator a·g on a fix generator
    let lay_cl = lay.clone();
    let base_cl = base.clone();
    let pi_cl = pi.clone();
    let tau_cl = tau.to_vec();
    let fix_cl = fix.clone();
    let single_action = move |a: &Elem, g: usize, fix_gen: usize| -> Elem {
        let mut out = vec![0i64; fix_cl.rank()];
        let fixed_count = lay_cl.fixed_elems.len() * lay_cl.rf;
        if fix_gen < fixed_count {
            let h = lay_cl.fixed_elems[fix_gen / lay_cl.rf];
            let k = fix_gen % lay_cl.rf;
            let target = pi_cl.mul(pi_cl.mul(g, h), tau_cl[g]);
            let v = base_cl.act(a, &base_cl.fix().generator(k));
            out[lay_cl.fixed_range(target)].copy_from_slice(&v);
        } else {
            let free_idx = fix_gen - fixed_count;
            let x = lay_cl.orbit_reps[free_idx / lay_cl.ru];
            let t = free_idx % lay_cl.ru;
            let c = base_cl.under().generator(t);
            let y = pi_cl.mul(pi_cl.mul(g, x), tau_cl[g]);
            let (rep, is_rep) = rep_of(y);
            let cc = if is_rep { c } else { base_cl.ring.winv(&c) };
            let v = base_cl.ring.mul(&base_cl.ring.mul(a, &cc), &base_cl.ring.winv(a));
            out[lay_cl.free_range(rep)].copy_from_slice(&v);
        }
        fix_cl.reduce(out)
    };

    let order = pi.order();
    let herm = HermMackey::from_action_fn(mk, ring.clone(), |xi| {
        let mut supp: Vec<(usize, Elem)> = (0..order)
            .filter_map(|g| {
                let a = xi[g * ru..(g + 1) * ru].to_vec();
                if a.iter().all(|&v| v == 0) {
                    None
                } else {
                    Some((g, a))
                }
            })
            .collect();
        if reverse_order {
            supp.reverse();
        }
        let mut images: Vec<Elem> = Vec::with_capacity(fix.rank());
        for fg in 0..fix.rank() {
            let mut acc = fix.zero();
            for (g, a) in &supp {
                acc = fix.add(&acc, &single_action(a, *g, fg));
            }
            // cross terms T(a_g g · R(b) · w(a_{g'} g')) over pairs in the
            // chosen total order
            let rb = res.apply(&fix.generator(fg));
            for u in 0..supp.len() {
                for v in u + 1..supp.len() {
                    let (g, a) = &supp[u];
                    let (gp, ap) = &supp[v];
                    let left = under_slot(*g, a);
                    let right = ring.winv(&under_slot(*gp, ap));
                    let prod = ring.mul(&ring.mul(&left, &rb), &right);
                    acc = fix.add(&acc, &tr.apply(&prod));
                }
            }
            images.push(acc);
        }
        GroupHom::from_images(&fix, &fix, &images).expect("group mackey action")
    })?;
    Ok(GroupMackey { herm, layout: lay, pi: pi.clone(), tau: tau.to_vec() })
}

impl GroupMackey {
    /// Injection of the base fix level at a τ-fixed element of π.
    pub fn inj_fixed(&self, base_fix: &FinAbGroup, g: usize) -> GroupHom {
        let fix = &self.herm.base.fix;
        let mut images = Vec::with_capacity(base_fix.rank());
        for k in 0..base_fix.rank() {
            let mut out = vec![0i64; fix.rank()];
            let mut gen = vec![0i64; base_fix.rank()];
            gen[k] = 1;
            out[self.layout.fixed_range(g)].copy_from_slice(&gen);
            images.push(fix.reduce(out));
        }
        GroupHom::from_images(base_fix, fix, &images).expect("fixed injection")
    }

    /// Injection of the base under level at a free-orbit representative.
    pub fn inj_free(&self, base_under: &FinAbGroup, rep: usize) -> GroupHom {
        let fix = &self.herm.base.fix;
        let mut images = Vec::with_capacity(base_under.rank());
        for k in 0..base_under.rank() {
            let mut out = vec![0i64; fix.rank()];
            let mut gen = vec![0i64; base_under.rank()];
            gen[k] = 1;
            out[self.layout.free_range(rep)].copy_from_slice(&gen);
            images.push(fix.reduce(out));
        }
        GroupHom::from_images(base_under, fix, &images).expect("free injection")
    }
}

/// Applies a morphism entrywise to the matrix construction.
pub fn apply_to_morphism_matrix(f: &HermMorphism, n: usize) -> Result<HermMorphism> {
    let src = matrix_mackey(&f.source, n)?;
    let tgt = matrix_mackey(&f.target, n)?;
    let su = &src.herm.base.under;
    let tu = &tgt.herm.base.under;
    let ru_s = f.source.under().rank();
    let ru_t = f.target.under().rank();
    let mut under_images: Vec<Elem> = Vec::with_capacity(su.rank());
    for slot in 0..n * n {
        for t in 0..ru_s {
            let img = f.f_under.apply(&f.source.under().generator(t));
            let mut out = vec![0i64; tu.rank()];
            out[slot * ru_t..(slot + 1) * ru_t].copy_from_slice(&img);
            under_images.push(tu.reduce(out));
        }
    }
    let f_under = GroupHom::from_images(su, tu, &under_images).map_err(Error::Invalid)?;
    let sf = &src.herm.base.fix;
    let tf = &tgt.herm.base.fix;
    let mut fix_images: Vec<Elem> = Vec::with_capacity(sf.rank());
    for i in 0..n {
        for j in i + 1..n {
            for t in 0..ru_s {
                let img = f.f_under.apply(&f.source.under().generator(t));
                let mut out = vec![0i64; tf.rank()];
                let range = tgt.layout.off_range(i, j);
                out[range.start..range.start + img.len()].copy_from_slice(&img);
                fix_images.push(tf.reduce(out));
            }
        }
    }
    for i in 0..n {
        for k in 0..f.source.fix().rank() {
            let img = f.f_fix.apply(&f.source.fix().generator(k));
            let mut out = vec![0i64; tf.rank()];
            let range = tgt.layout.diag_range(i);
            out[range.start..range.start + img.len()].copy_from_slice(&img);
            fix_images.push(tf.reduce(out));
        }
    }
    let f_fix = GroupHom::from_images(sf, tf, &fix_images).map_err(Error::Invalid)?;
    Ok(HermMorphism { source: src.herm, target: tgt.herm, f_under, f_fix, unital: f.unital })
}

/// Applies a morphism coefficientwise to the group-ring construction,
/// using the default section on both sides.
pub fn apply_to_morphism_group(
    f: &HermMorphism,
    pi: &FinGroup,
    tau: &[usize],
) -> Result<HermMorphism> {
    let src = group_mackey(&f.source, pi, tau)?;
    let tgt = group_mackey(&f.target, pi, tau)?;
    group_morphism_between(f, &src, &tgt)
}

/// Same as [`apply_to_morphism_group`] for prebuilt sides; errors when the
/// two constructions disagree on the group, involution or section.
pub fn group_morphism_between(
    f: &HermMorphism,
    src: &GroupMackey,
    tgt: &GroupMackey,
) -> Result<HermMorphism> {
    if src.pi != tgt.pi || src.tau != tgt.tau {
        return Err(Error::SectionMismatch("group or involution differ".into()));
    }
    if src.layout.fixed_elems != tgt.layout.fixed_elems
        || src.layout.orbit_reps != tgt.layout.orbit_reps
    {
        return Err(Error::SectionMismatch("sections differ".into()));
    }
    let pi = &src.pi;
    let su = &src.herm.base.under;
    let tu = &tgt.herm.base.under;
    let ru_s = f.source.under().rank();
    let ru_t = f.target.under().rank();
    let mut under_images: Vec<Elem> = Vec::with_capacity(su.rank());
    for g in 0..pi.order() {
        for t in 0..ru_s {
            let img = f.f_under.apply(&f.source.under().generator(t));
            let mut out = vec![0i64; tu.rank()];
            out[g * ru_t..(g + 1) * ru_t].copy_from_slice(&img);
            under_images.push(tu.reduce(out));
        }
    }
    let f_under = GroupHom::from_images(su, tu, &under_images).map_err(Error::Invalid)?;
    let sf = &src.herm.base.fix;
    let tf = &tgt.herm.base.fix;
    let mut fix_images: Vec<Elem> = Vec::with_capacity(sf.rank());
    for &g in &src.layout.fixed_elems {
        for k in 0..f.source.fix().rank() {
            let img = f.f_fix.apply(&f.source.fix().generator(k));
            let mut out = vec![0i64; tf.rank()];
            let range = tgt.layout.fixed_range(g);
            out[range.start..range.start + img.len()].copy_from_slice(&img);
            fix_images.push(tf.reduce(out));
        }
    }
    for &x in &src.layout.orbit_reps {
        for t in 0..ru_s {
            let img = f.f_under.apply(&f.source.under().generator(t));
            let mut out = vec![0i64; tf.rank()];
            let range = tgt.layout.free_range(x);
            out[range.start..range.start + img.len()].copy_from_slice(&img);
            fix_images.push(tf.reduce(out));
        }
    }
    let f_fix = GroupHom::from_images(sf, tf, &fix_images).map_err(Error::Invalid)?;
    Ok(HermMorphism {
        source: src.herm.clone(),
        target: tgt.herm.clone(),
        f_under,
        f_fix,
        unital: f.unital,
    })
}

/// Machine check of the comparison `underline(M_n(R)) ≅ M_n(underline(R))`.
pub fn matrix_iso_check(ring: &crate::ring::FinRingInv, n: usize) -> Result<Report> {
    let mut report = Report::new("matrix comparison isomorphism");
    let mn = matrix_ring(ring, n);
    let lhs = crate::mackey::underline_of_ring(&mn)?;
    let base = crate::mackey::underline_of_ring(ring)?;
    let rhs = matrix_mackey(&base, n)?;
    let f_under = GroupHom::identity(&lhs.base.under);
    let r = ring.rank();
    let sf = &lhs.base.fix;
    let tf = &rhs.herm.base.fix;
    let mut images: Vec<Elem> = Vec::with_capacity(sf.rank());
    for k in 0..sf.rank() {
        let amb = lhs.base.res.apply(&sf.generator(k));
        let mut out = vec![0i64; tf.rank()];
        for i in 0..n {
            for j in i + 1..n {
                let entry = amb[(i * n + j) * r..(i * n + j + 1) * r].to_vec();
                let range = rhs.layout.off_range(i, j);
                out[range].copy_from_slice(&entry);
            }
            let diag = amb[(i * n + i) * r..(i * n + i + 1) * r].to_vec();
            let fixed = base
                .base
                .res
                .preimage(&diag)
                .ok_or_else(|| Error::Invalid("diagonal entry not w-fixed".into()))?;
            let range = rhs.layout.diag_range(i);
            out[range].copy_from_slice(&fixed);
        }
        images.push(tf.reduce(out));
    }
    let f_fix = GroupHom::from_images(sf, tf, &images).map_err(Error::Invalid)?;
    let iso = HermMorphism { source: lhs, target: rhs.herm, f_under, f_fix, unital: true };
    let morph = check_herm_morphism(&iso);
    for c in morph.checks {
        report.push(c);
    }
    report.push(if iso.is_isomorphism() {
        CheckReport::pass("bijective on both levels", 2)
    } else {
        CheckReport::fail("bijective on both levels", "not bijective".into(), 2)
    });
    Ok(report)
}

/// Machine check of the comparison `underline(R[pi]) ≅ underline(R)[pi]`.
pub fn groupring_iso_check(ring: &crate::ring::FinRingInv, pi: &FinGroup) -> Result<Report> {
    let mut report = Report::new("group-ring comparison isomorphism");
    let tau = pi.inversion_involution();
    let rpi = group_algebra(ring, pi, &tau)?;
    let lhs = crate::mackey::underline_of_ring(&rpi)?;
    let base = crate::mackey::underline_of_ring(ring)?;
    let rhs = group_mackey(&base, pi, &tau)?;
    let f_under = GroupHom::identity(&lhs.base.under);
    let r = ring.rank();
    let sf = &lhs.base.fix;
    let tf = &rhs.herm.base.fix;
    let mut images: Vec<Elem> = Vec::with_capacity(sf.rank());
    for k in 0..sf.rank() {
        let amb = lhs.base.res.apply(&sf.generator(k));
        let mut out = vec![0i64; tf.rank()];
        for &g in &rhs.layout.fixed_elems {
            let coeff = amb[g * r..(g + 1) * r].to_vec();
            let fixed = base
                .base
                .res
                .preimage(&coeff)
                .ok_or_else(|| Error::Invalid("fixed-element coefficient not w-fixed".into()))?;
            let range = rhs.layout.fixed_range(g);
            out[range].copy_from_slice(&fixed);
        }
        for &x in &rhs.layout.orbit_reps {
            let coeff = amb[x * r..(x + 1) * r].to_vec();
            let range = rhs.layout.free_range(x);
            out[range].copy_from_slice(&coeff);
        }
        images.push(tf.reduce(out));
    }
    let f_fix = GroupHom::from_images(sf, tf, &images).map_err(Error::Invalid)?;
    let iso = HermMorphism { source: lhs, target: rhs.herm, f_under, f_fix, unital: true };
    let morph = check_herm_morphism(&iso);
    for c in morph.checks {
        report.push(c);
    }
    report.push(if iso.is_isomorphism() {
        CheckReport::pass("bijective on both levels", 2)
    } else {
        CheckReport::fail("bijective on both levels", "not bijective".into(), 2)
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::{burnside_mod, check_hermitian_axioms, rank_map_base, underline_of_ring};
    use crate::ring::zmod;

    #[test]
    fn m2_of_underline_z3() {
        let base = underline_of_ring(&zmod(3)).unwrap();
        let m2 = matrix_mackey(&base, 2).unwrap();
        // |fix| = 3 * 3^2 = 27
        assert_eq!(m2.herm.base.fix.card(), Some(27));
        assert!(check_hermitian_axioms(&m2.herm, 0).passed());
        // transfer of [[a, b], [c, d]] has off-diagonal b + c and diagonal (2a, 2d)
        let a = RMatrix::from_entries(2, vec![vec![1], vec![2], vec![1], vec![1]]);
        let t = mat_transfer(&base, &m2.layout, &a);
        assert_eq!(m2.layout.off_entry(&t, 0, 1), vec![0]); // 2 + 1 = 0 mod 3
        let two = base.base.tr.apply(&vec![1]);
        assert_eq!(m2.layout.diag_entry(&t, 0), two);
        assert_eq!(m2.layout.diag_entry(&t, 1), two);
    }

    #[test]
    fn identity_matrix_acts_trivially_on_burnside() {
        let base = burnside_mod(3);
        let m2 = matrix_mackey(&base, 2).unwrap();
        let id = RMatrix::identity(&base.ring, 2);
        for b in m2.herm.base.fix.elements() {
            assert_eq!(mat_action(&base, &m2.layout, &id, &b), b);
        }
        assert!(check_hermitian_axioms(&m2.herm, 0).passed());
    }

    #[test]
    fn group_mackey_shapes() {
        let base = underline_of_ring(&zmod(3)).unwrap();
        let c2 = FinGroup::cyclic(2);
        let tau = c2.inversion_involution();
        let gm = group_mackey(&base, &c2, &tau).unwrap();
        // inversion is trivial on Z/2: fix = (Z/3)^2, no free summand
        assert_eq!(gm.layout.fixed_elems.len(), 2);
        assert_eq!(gm.layout.orbit_reps.len(), 0);
        assert_eq!(gm.herm.base.fix.card(), Some(9));
        assert!(check_hermitian_axioms(&gm.herm, 0).passed());

        let c3 = FinGroup::cyclic(3);
        let tau3 = c3.inversion_involution();
        let gm3 = group_mackey(&base, &c3, &tau3).unwrap();
        // fix = Z/3 (over e) + Z/3 (one free orbit {g, g^2})
        assert_eq!(gm3.layout.fixed_elems, vec![0]);
        assert_eq!(gm3.layout.orbit_reps, vec![1]);
        assert_eq!(gm3.herm.base.fix.card(), Some(9));
        assert!(check_hermitian_axioms(&gm3.herm, 0).passed());
    }

    #[test]
    fn group_mackey_transfer_on_free_orbit() {
        let base = underline_of_ring(&zmod(3)).unwrap();
        let c3 = FinGroup::cyclic(3);
        let tau = c3.inversion_involution();
        let gm = group_mackey(&base, &c3, &tau).unwrap();
        // T(a·g) = a[g] when g is the section rep of a free orbit
        let under = &gm.herm.base.under;
        let mut ag = under.zero();
        ag[1] = 2; // 2·g
        let t = gm.herm.base.tr.apply(&ag);
        let mut expect = gm.herm.base.fix.zero();
        let range = gm.layout.free_range(1);
        expect[range].copy_from_slice(&[2]);
        assert_eq!(t, expect);
        // and T(w(a)·g²) lands on the same generator
        let mut ag2 = under.zero();
        ag2[2] = 2;
        let t2 = gm.herm.base.tr.apply(&ag2);
        assert_eq!(t2, expect);
    }

    #[test]
    fn burnside_group_mackey_s3() {
        let base = burnside_mod(3);
        let s3 = FinGroup::symmetric3();
        let tau = s3.inversion_involution();
        let gm = group_mackey(&base, &s3, &tau).unwrap();
        // 4 involutive elements (e and three transpositions), 1 free orbit
        assert_eq!(gm.layout.fixed_elems.len(), 4);
        assert_eq!(gm.layout.orbit_reps.len(), 1);
        // sampled check on the big instance
        assert!(check_hermitian_axioms(&gm.herm, 12345).passed());
    }

    #[test]
    fn action_extension_independent_of_total_order() {
        let base = underline_of_ring(&zmod(3)).unwrap();
        let c3 = FinGroup::cyclic(3);
        let tau = c3.inversion_involution();
        let section = default_section(&c3, &tau);
        let fwd = build_group_mackey(&base, &c3, &tau, &section, false).unwrap();
        let rev = build_group_mackey(&base, &c3, &tau, &section, true).unwrap();
        assert!(fwd.herm.same_tables(&rev.herm));
        let b5 = burnside_mod(5);
        let fwd5 = build_group_mackey(&b5, &c3, &tau, &section, false).unwrap();
        let rev5 = build_group_mackey(&b5, &c3, &tau, &section, true).unwrap();
        assert!(fwd5.herm.same_tables(&rev5.herm));
    }

    #[test]
    fn sections_give_isomorphic_functors_for_trivial_w() {
        // burnside base has trivial involution; swap the section of Z/3
        let base = burnside_mod(3);
        let c3 = FinGroup::cyclic(3);
        let tau = c3.inversion_involution();
        let gma = group_mackey_with_section(&base, &c3, &tau, &[1]).unwrap();
        let gmb = group_mackey_with_section(&base, &c3, &tau, &[2]).unwrap();
        let f_under = GroupHom::identity(&gma.herm.base.under);
        let sf = &gma.herm.base.fix;
        let tf = &gmb.herm.base.fix;
        let mut images = Vec::new();
        for &g in &gma.layout.fixed_elems {
            for k in 0..base.fix().rank() {
                let mut out = vec![0i64; tf.rank()];
                let mut gen = vec![0i64; base.fix().rank()];
                gen[k] = 1;
                let range = gmb.layout.fixed_range(g);
                out[range].copy_from_slice(&gen);
                images.push(tf.reduce(out));
            }
        }
        for _ in &gma.layout.orbit_reps {
            for t in 0..base.under().rank() {
                let mut out = vec![0i64; tf.rank()];
                let mut gen = vec![0i64; base.under().rank()];
                gen[t] = 1;
                let range = gmb.layout.free_range(2);
                out[range].copy_from_slice(&gen);
                images.push(tf.reduce(out));
            }
        }
        let f_fix = GroupHom::from_images(sf, tf, &images).unwrap();
        let iso = HermMorphism {
            source: gma.herm.clone(),
            target: gmb.herm.clone(),
            f_under,
            f_fix,
            unital: true,
        };
        assert!(check_herm_morphism(&iso).passed());
        assert!(iso.is_isomorphism());
    }

    #[test]
    fn matrix_iso_checks() {
        assert!(matrix_iso_check(&zmod(3), 2).unwrap().passed());
        assert!(matrix_iso_check(&zmod(5), 2).unwrap().passed());
        assert!(matrix_iso_check(&zmod(3), 1).unwrap().passed());
    }

    #[test]
    fn groupring_iso_checks() {
        assert!(groupring_iso_check(&zmod(3), &FinGroup::cyclic(2)).unwrap().passed());
        assert!(groupring_iso_check(&zmod(3), &FinGroup::cyclic(3)).unwrap().passed());
        assert!(groupring_iso_check(&zmod(3), &FinGroup::cyclic(1)).unwrap().passed());
    }

    #[test]
    fn functoriality_on_morphisms() {
        let d = rank_map_base(3).unwrap();
        let m2d = apply_to_morphism_matrix(&d, 2).unwrap();
        assert!(check_herm_morphism(&m2d).passed());
        assert!(m2d.unital);

        let c2 = FinGroup::cyclic(2);
        let dz2 = apply_to_morphism_group(&d, &c2, &c2.inversion_involution()).unwrap();
        assert!(check_herm_morphism(&dz2).passed());
        let direct = crate::mackey::rank_map(3, &c2).unwrap();
        assert!(dz2.eq_as_maps(&direct));

        // identity maps to identity; composition is preserved
        let ident = HermMorphism::identity(&d.source);
        let m2i = apply_to_morphism_matrix(&ident, 2).unwrap();
        assert!(m2i.eq_as_maps(&HermMorphism::identity(&m2i.source)));
        let s = crate::mackey::half_transfer_section_base(3).unwrap();
        let comp_then_apply = apply_to_morphism_matrix(&d.compose(&s), 2).unwrap();
        let apply_then_comp = apply_to_morphism_matrix(&d, 2)
            .unwrap()
            .compose(&apply_to_morphism_matrix(&s, 2).unwrap());
        assert!(comp_then_apply.eq_as_maps(&apply_then_comp));
    }

    #[test]
    fn section_mismatch_detected() {
        let base = burnside_mod(3);
        let c3 = FinGroup::cyclic(3);
        let tau = c3.inversion_involution();
        let b = group_mackey_with_section(&base, &c3, &tau, &[2]).unwrap();
        let d = rank_map_base(3).unwrap();
        let gm_src = group_mackey_with_section(&d.source, &c3, &tau, &[1]).unwrap();
        assert!(matches!(
            group_morphism_between(&d, &gm_src, &b),
            Err(Error::SectionMismatch(_))
        ));
    }
}
