//! Z/2-Mackey functors with Hermitian and Tambara structure.
//!
//! A Mackey functor here is a pair of finite abelian groups ("under" at the
//! free orbit, "fix" at the trivial orbit) with involution, restriction and
//! transfer satisfying `res∘tr = id + w`. The Hermitian refinement adds a ring
//! structure on the under level and a twisted multiplicative action of the
//! under level on the fix level, stored as one endomorphism per ring element.
//! The action is required to be additive in its second argument; every
//! instance built here has that property by construction and the axiom
//! checkers verify the remaining laws.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abgroup::{kernel_subgroup, Elem, FinAbGroup, GroupHom};
use crate::error::{Error, Result};
use crate::group::FinGroup;
use crate::report::{CheckMode, CheckReport, Report};
use crate::ring::{check_anti_involution_capped, zmod, FinRingInv};

/// Elementary-check budget above which the Hermitian axiom suite samples
/// instead of exhausting.
pub const EXHAUSTION_BOUND: u128 = 100_000_000;
/// Number of random triples drawn in sampled mode.
pub const SAMPLE_COUNT: u64 = 1_000_000;
/// Largest under-level carrier for which an action table is materialized.
const ACTION_TABLE_BOUND: u128 = 1 << 22;

/// The underlying Z/2-Mackey functor.
#[derive(Clone, Debug)]
pub struct MackeyZ2 {
    pub under: FinAbGroup,
    pub fix: FinAbGroup,
    /// involution on `under`
    pub w: GroupHom,
    /// restriction `fix -> under`
    pub res: GroupHom,
    /// transfer `under -> fix`
    pub tr: GroupHom,
}

/// Verifies the Mackey functor laws as exact map identities.
pub fn check_mackey_axioms(m: &MackeyZ2) -> Report {
    let mut report = Report::new("mackey axioms");
    let gens = m.under.rank().max(m.fix.rank()) as u64;
    let id_u = GroupHom::identity(&m.under);

    let ww = m.w.compose(&m.w);
    report.push(eq_check("w∘w = id", &ww, &id_u, gens));
    report.push(eq_check("w∘res = res", &m.w.compose(&m.res), &m.res, gens));
    report.push(eq_check("tr∘w = tr", &m.tr.compose(&m.w), &m.tr, gens));
    let rt = m.res.compose(&m.tr);
    let id_plus_w = id_u.add(&m.w);
    report.push(eq_check("res∘tr = id + w", &rt, &id_plus_w, gens));
    report
}

fn eq_check(name: &str, lhs: &GroupHom, rhs: &GroupHom, checks: u64) -> CheckReport {
    if lhs.eq_as_maps(rhs) {
        CheckReport::pass(name, checks)
    } else {
        let j = lhs.first_difference(rhs).unwrap_or(0);
        let x = lhs.source.generator(j);
        CheckReport::fail(
            name,
            format!("at generator {j}: lhs {:?} != rhs {:?}", lhs.apply(&x), rhs.apply(&x)),
            checks,
        )
    }
}

/// A Hermitian Mackey functor: ring structure on the under level plus the
/// twisted action on the fix level.
#[derive(Clone, Debug)]
pub struct HermMackey {
    pub base: MackeyZ2,
    pub ring: FinRingInv,
    /// action endomorphism of `fix`, indexed by the under-element index
    action: Vec<GroupHom>,
}

impl HermMackey {
    /// Materializes the action table from a per-element action function.
    pub fn from_action_fn(
        base: MackeyZ2,
        ring: FinRingInv,
        mut act: impl FnMut(&Elem) -> GroupHom,
    ) -> Result<Self> {
        if ring.add.orders() != base.under.orders() {
            return Err(Error::Invalid("ring carrier differs from under level".into()));
        }
        let card = base.under.card().ok_or_else(|| Error::TooLarge("infinite under".into()))?;
        if card > ACTION_TABLE_BOUND {
            return Err(Error::TooLarge(format!("under carrier {card} too large for a table")));
        }
        let mut table = Vec::with_capacity(card as usize);
        for idx in 0..card {
            table.push(act(&base.under.elem_at(idx)));
        }
        Ok(HermMackey { base, ring, action: table })
    }

    pub fn under(&self) -> &FinAbGroup {
        &self.base.under
    }

    pub fn fix(&self) -> &FinAbGroup {
        &self.base.fix
    }

    pub fn action_hom(&self, a: &Elem) -> &GroupHom {
        &self.action[self.base.under.index_of(a) as usize]
    }

    pub fn act(&self, a: &Elem, b: &Elem) -> Elem {
        self.action_hom(a).apply(b)
    }

    /// Structural equality of all tables; used for "table equality" tests.
    pub fn same_tables(&self, other: &HermMackey) -> bool {
        if self.base.under.orders() != other.base.under.orders()
            || self.base.fix.orders() != other.base.fix.orders()
        {
            return false;
        }
        if !(self.base.w.eq_as_maps(&other.base.w)
            && self.base.res.eq_as_maps(&other.base.res)
            && self.base.tr.eq_as_maps(&other.base.tr))
        {
            return false;
        }
        let r = self.ring.rank();
        for i in 0..r {
            for j in 0..r {
                if self.ring.generator_product(i, j) != other.ring.generator_product(i, j) {
                    return false;
                }
            }
        }
        self.ring.one == other.ring.one
            && self.action.iter().zip(&other.action).all(|(a, b)| a.eq_as_maps(b))
    }
}

/// Verifies the Hermitian axioms. Instances whose elementary-check budget
/// `|under|^2 * |fix|` stays within [`EXHAUSTION_BOUND`] are checked
/// exhaustively (all pairs of ring elements, all fix generators — exact by
/// additivity of the action); larger instances draw [`SAMPLE_COUNT`] seeded
/// random triples.
pub fn check_hermitian_axioms(h: &HermMackey, seed: u64) -> Report {
    let mut report = check_mackey_axioms(&h.base);
    report.subject = "hermitian axioms".into();
    report.push(if h.ring.w.eq_as_maps(&h.base.w) {
        CheckReport::pass("ring involution agrees with w", 1)
    } else {
        CheckReport::fail("ring involution agrees with w", "tables differ".into(), 1)
    });
    let anti = check_anti_involution_capped(&h.ring, 1 << 22);
    for mut c in anti.checks {
        c.name = format!("axiom i: {}", c.name);
        report.push(c);
    }

    let under_card = h.base.under.card().expect("finite");
    let fix_card = h.base.fix.card().expect("finite");
    let budget = under_card * under_card * fix_card;
    if budget <= EXHAUSTION_BOUND {
        exhaustive_hermitian(h, &mut report);
    } else {
        sampled_hermitian(h, seed, &mut report);
    }
    report
}

fn exhaustive_hermitian(h: &HermMackey, report: &mut Report) {
    let under = &h.base.under;
    let fix = &h.base.fix;
    let res = &h.base.res;
    let tr = &h.base.tr;
    let n = under.card().unwrap();
    let rf = fix.rank() as u64;
    let ru = under.rank() as u64;

    // unit and zero act as identity and zero
    let one_hom = h.action_hom(&h.ring.one);
    report.push(eq_check("1·b = b", one_hom, &GroupHom::identity(fix), rf));
    let zero_hom = h.action_hom(&under.zero());
    report.push(eq_check("0·b = 0", zero_hom, &GroupHom::zero(fix, fix), rf));

    // axiom ii: res(a·b) = a res(b) w(a), per element a on fix generators
    let mut fail = None;
    for idx in 0..n {
        let a = under.elem_at(idx);
        let wa = h.base.w.apply(&a);
        let lhs = res.compose(h.action_hom(&a));
        let images: Vec<Elem> = (0..fix.rank())
            .map(|j| {
                let rb = res.apply(&fix.generator(j));
                h.ring.mul(&h.ring.mul(&a, &rb), &wa)
            })
            .collect();
        let rhs = GroupHom::from_images(fix, under, &images).expect("axiom ii rhs");
        if !lhs.eq_as_maps(&rhs) {
            fail = Some(format!("a = {a:?}"));
            break;
        }
    }
    report.push(match fail {
        None => CheckReport::pass("axiom ii: res(a·b) = a·res(b)·w(a)", n as u64 * rf),
        Some(w) => CheckReport::fail("axiom ii: res(a·b) = a·res(b)·w(a)", w, n as u64 * rf),
    });

    // axiom iii: a·tr(c) = tr(a c w(a)), per element a on under generators
    let mut fail = None;
    for idx in 0..n {
        let a = under.elem_at(idx);
        let wa = h.base.w.apply(&a);
        let lhs = h.action_hom(&a).compose(tr);
        let images: Vec<Elem> = (0..under.rank())
            .map(|j| tr.apply(&h.ring.mul(&h.ring.mul(&a, &under.generator(j)), &wa)))
            .collect();
        let rhs = GroupHom::from_images(under, fix, &images).expect("axiom iii rhs");
        if !lhs.eq_as_maps(&rhs) {
            fail = Some(format!("a = {a:?}"));
            break;
        }
    }
    report.push(match fail {
        None => CheckReport::pass("axiom iii: a·tr(c) = tr(a·c·w(a))", n as u64 * ru),
        Some(w) => CheckReport::fail("axiom iii: a·tr(c) = tr(a·c·w(a))", w, n as u64 * ru),
    });

    // axiom iv and associativity, over all pairs (a, a')
    let mut fail_iv = None;
    let mut fail_assoc = None;
    for ia in 0..n {
        let a = under.elem_at(ia);
        let wa_hom = h.action_hom(&a).clone();
        for ib in 0..n {
            let b = under.elem_at(ib);
            if fail_iv.is_none() {
                let sum = under.add(&a, &b);
                let lhs = h.action_hom(&sum);
                let wb = h.base.w.apply(&b);
                let images: Vec<Elem> = (0..fix.rank())
                    .map(|j| {
                        let rb = res.apply(&fix.generator(j));
                        tr.apply(&h.ring.mul(&h.ring.mul(&a, &rb), &wb))
                    })
                    .collect();
                let corr = GroupHom::from_images(fix, fix, &images).expect("axiom iv corr");
                let rhs = wa_hom.add(h.action_hom(&b)).add(&corr);
                if !lhs.eq_as_maps(&rhs) {
                    fail_iv = Some(format!("a = {a:?}, a' = {b:?}"));
                }
            }
            if fail_assoc.is_none() {
                let prod = h.ring.mul(&a, &b);
                let lhs = wa_hom.compose(h.action_hom(&b));
                if !lhs.eq_as_maps(h.action_hom(&prod)) {
                    fail_assoc = Some(format!("a = {a:?}, a' = {b:?}"));
                }
            }
        }
    }
    let pair_checks = (n * n) as u64 * rf;
    report.push(match fail_iv {
        None => {
            CheckReport::pass("axiom iv: (a+a')·b = a·b + a'·b + tr(a·res(b)·w(a'))", pair_checks)
        }
        Some(w) => CheckReport::fail(
            "axiom iv: (a+a')·b = a·b + a'·b + tr(a·res(b)·w(a'))",
            w,
            pair_checks,
        ),
    });
    report.push(match fail_assoc {
        None => CheckReport::pass("action associativity: a·(a'·b) = (aa')·b", pair_checks),
        Some(w) => CheckReport::fail("action associativity: a·(a'·b) = (aa')·b", w, pair_checks),
    });
}

fn sampled_hermitian(h: &HermMackey, seed: u64, report: &mut Report) {
    let under = &h.base.under;
    let fix = &h.base.fix;
    let n = under.card().unwrap();
    let nf = fix.card().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let one_hom = h.action_hom(&h.ring.one);
    report.push(eq_check("1·b = b", one_hom, &GroupHom::identity(fix), fix.rank() as u64));
    let zero_hom = h.action_hom(&under.zero());
    report.push(eq_check("0·b = 0", zero_hom, &GroupHom::zero(fix, fix), fix.rank() as u64));

    let mut fails: [Option<String>; 4] = [None, None, None, None];
    for _ in 0..SAMPLE_COUNT {
        let a = under.elem_at(rng.gen_range(0..n));
        let b = under.elem_at(rng.gen_range(0..n));
        let x = fix.elem_at(rng.gen_range(0..nf));
        let wa = h.base.w.apply(&a);
        let wb = h.base.w.apply(&b);
        // ii
        if fails[0].is_none() {
            let lhs = h.base.res.apply(&h.act(&a, &x));
            let rhs = h.ring.mul(&h.ring.mul(&a, &h.base.res.apply(&x)), &wa);
            if lhs != rhs {
                fails[0] = Some(format!("a = {a:?}, b = {x:?}"));
            }
        }
        // iii
        if fails[1].is_none() {
            let lhs = h.act(&a, &h.base.tr.apply(&b));
            let rhs = h.base.tr.apply(&h.ring.mul(&h.ring.mul(&a, &b), &wa));
            if lhs != rhs {
                fails[1] = Some(format!("a = {a:?}, c = {b:?}"));
            }
        }
        // iv
        if fails[2].is_none() {
            let lhs = h.act(&under.add(&a, &b), &x);
            let corr = h.base.tr.apply(&h.ring.mul(&h.ring.mul(&a, &h.base.res.apply(&x)), &wb));
            let rhs = fix.add(&fix.add(&h.act(&a, &x), &h.act(&b, &x)), &corr);
            if lhs != rhs {
                fails[2] = Some(format!("a = {a:?}, a' = {b:?}, b = {x:?}"));
            }
        }
        // associativity
        if fails[3].is_none() {
            let lhs = h.act(&a, &h.act(&b, &x));
            let rhs = h.act(&h.ring.mul(&a, &b), &x);
            if lhs != rhs {
                fails[3] = Some(format!("a = {a:?}, a' = {b:?}, b = {x:?}"));
            }
        }
    }
    let names = [
        "axiom ii: res(a·b) = a·res(b)·w(a)",
        "axiom iii: a·tr(c) = tr(a·c·w(a))",
        "axiom iv: (a+a')·b = a·b + a'·b + tr(a·res(b)·w(a'))",
        "action associativity: a·(a'·b) = (aa')·b",
    ];
    for (name, fail) in names.iter().zip(fails) {
        report.push(CheckReport {
            name: (*name).into(),
            passed: fail.is_none(),
            witness: fail,
            mode: CheckMode::Sampled { seed, samples: SAMPLE_COUNT },
        });
    }
}

/// The Hermitian Mackey functor of a ring with anti-involution: fix level is
/// the fixed subgroup, restriction the inclusion, transfer `a + w(a)`, and
/// action `a·b = a b w(a)`.
pub fn underline_of_ring(ring: &FinRingInv) -> Result<HermMackey> {
    let anti = check_anti_involution_capped(ring, 1 << 16);
    if !anti.passed() {
        return Err(Error::InvalidAntiInvolution(
            anti.first_failure().map(|c| c.name.clone()).unwrap_or_default(),
        ));
    }
    let under = ring.add.clone();
    let mut w_minus_id = ring.w.clone();
    for i in 0..w_minus_id.matrix.rows {
        w_minus_id.matrix[(i, i)] -= 1;
    }
    let (fix, embed) = kernel_subgroup(&w_minus_id);
    let res = embed;
    let tr_images: Vec<Elem> = (0..under.rank())
        .map(|j| {
            let e = under.generator(j);
            res.preimage(&under.add(&e, &ring.w.apply(&e))).expect("transfer image must be fixed")
        })
        .collect();
    let tr = GroupHom::from_images(&under, &fix, &tr_images).map_err(Error::Invalid)?;
    let base = MackeyZ2 {
        under: under.clone(),
        fix: fix.clone(),
        w: ring.w.clone(),
        res: res.clone(),
        tr,
    };
    let ring_cl = ring.clone();
    HermMackey::from_action_fn(base, ring.clone(), |a| {
        let wa = ring_cl.winv(a);
        let images: Vec<Elem> = (0..fix.rank())
            .map(|j| {
                let b = res.apply(&fix.generator(j));
                res.preimage(&ring_cl.mul(&ring_cl.mul(a, &b), &wa)).expect("action image not fixed")
            })
            .collect();
        GroupHom::from_images(&fix, &fix, &images).expect("underline action")
    })
}

/// The Burnside Hermitian Mackey functor reduced mod m: under level Z/m with
/// trivial involution, fix level Z/m ⊕ Z/m, restriction `(b, c) -> b + 2c`,
/// transfer `a -> (0, a)` and action `a·(b, c) = (ab, ba(a-1)/2 + a²c)`.
pub fn burnside_mod(m: u64) -> HermMackey {
    if m == 1 {
        let t = FinAbGroup::trivial();
        let base = MackeyZ2 {
            under: t.clone(),
            fix: t.clone(),
            w: GroupHom::identity(&t),
            res: GroupHom::zero(&t, &t),
            tr: GroupHom::zero(&t, &t),
        };
        let tt = t.clone();
        return HermMackey::from_action_fn(base, zmod(1), move |_| GroupHom::zero(&tt, &tt))
            .expect("trivial functor");
    }
    let under = FinAbGroup::cyclic(m);
    let fix = FinAbGroup::new(vec![m, m]);
    let w = GroupHom::identity(&under);
    let res = GroupHom::from_images(&fix, &under, &[vec![1], vec![2]]).expect("burnside res");
    let tr = GroupHom::from_images(&under, &fix, &[vec![0, 1]]).expect("burnside tr");
    let base = MackeyZ2 { under: under.clone(), fix: fix.clone(), w, res, tr };
    HermMackey::from_action_fn(base, zmod(m), |a| {
        let a = a[0];
        let half = a * (a - 1) / 2;
        GroupHom::from_images(&fix, &fix, &[vec![a, half], vec![0, a * a]])
            .expect("burnside action")
    })
    .expect("burnside functor")
}

/// A Z/2-Tambara functor: commutative ring structures on both levels and a
/// multiplicative norm.
#[derive(Clone, Debug)]
pub struct TambaraZ2 {
    pub base: MackeyZ2,
    pub under_ring: FinRingInv,
    pub fix_ring: FinRingInv,
    /// norm images, indexed by under-element index
    norm: Vec<Elem>,
}

impl TambaraZ2 {
    pub fn norm(&self, a: &Elem) -> &Elem {
        &self.norm[self.base.under.index_of(a) as usize]
    }

    /// Forgets to a Hermitian Mackey functor via `a·b = N(a) b`.
    pub fn forget(&self) -> HermMackey {
        let fix = self.base.fix.clone();
        let fr = self.fix_ring.clone();
        let norm = self.norm.clone();
        let under = self.base.under.clone();
        HermMackey::from_action_fn(self.base.clone(), self.under_ring.clone(), |a| {
            let na = &norm[under.index_of(a) as usize];
            let images: Vec<Elem> =
                (0..fix.rank()).map(|j| fr.mul(na, &fix.generator(j))).collect();
            GroupHom::from_images(&fix, &fix, &images).expect("tambara action")
        })
        .expect("tambara forget")
    }
}

/// Tambara structure on the underline of a commutative ring:
/// fix-level multiplication inherited from the ring, norm `N(a) = a w(a)`.
pub fn underline_tambara(ring: &FinRingInv) -> Result<TambaraZ2> {
    if !ring.is_commutative() {
        return Err(Error::Invalid("Tambara structure needs a commutative ring".into()));
    }
    let herm = underline_of_ring(ring)?;
    let base = herm.base.clone();
    let fix = base.fix.clone();
    let res = base.res.clone();
    let pre = |x: &Elem| res.preimage(x).expect("not fixed");
    let rank = fix.rank();
    let sc: Vec<Vec<Elem>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| {
                    pre(&ring.mul(&res.apply(&fix.generator(i)), &res.apply(&fix.generator(j))))
                })
                .collect()
        })
        .collect();
    let one_fix = pre(&ring.one);
    let fix_ring = FinRingInv::new(fix.clone(), sc, one_fix, GroupHom::identity(&fix))
        .map_err(|e| Error::Invalid(format!("fixed subring: {e}")))?;
    let norm: Vec<Elem> = (0..base.under.card().unwrap())
        .map(|i| {
            let a = base.under.elem_at(i);
            pre(&ring.mul(&a, &ring.winv(&a)))
        })
        .collect();
    Ok(TambaraZ2 { base, under_ring: ring.clone(), fix_ring, norm })
}

/// The Burnside Tambara functor mod m: fix-level ring
/// `(b,c)(b',c') = (bb', bc' + cb' + 2cc')`, norm `N(a) = (a, (a²-a)/2)`.
pub fn burnside_tambara(m: u64) -> TambaraZ2 {
    let herm = burnside_mod(m);
    let base = herm.base.clone();
    if m == 1 {
        return TambaraZ2 { base, under_ring: zmod(1), fix_ring: zmod(1), norm: vec![vec![]] };
    }
    let fix = base.fix.clone();
    let sc = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 2]]];
    let fix_ring = FinRingInv::new(fix.clone(), sc, vec![1, 0], GroupHom::identity(&fix))
        .expect("burnside fixed ring");
    let norm: Vec<Elem> = (0..m as i64)
        .map(|a| fix.reduce(vec![a, (a * a - a) / 2]))
        .collect();
    TambaraZ2 { base, under_ring: zmod(m), fix_ring, norm }
}

/// Verifies the Tambara laws: both levels commutative rings, Frobenius
/// reciprocity, `res(N(a)) = a w(a)`, the additivity defect of the norm, and
/// multiplicativity of the norm.
pub fn check_tambara_axioms(t: &TambaraZ2) -> Report {
    let mut report = check_mackey_axioms(&t.base);
    report.subject = "tambara axioms".into();
    report.push(if t.under_ring.is_commutative() && t.fix_ring.is_commutative() {
        CheckReport::pass("both levels commutative", 1)
    } else {
        CheckReport::fail("both levels commutative", "a level is noncommutative".into(), 1)
    });

    let under = &t.base.under;
    let fix = &t.base.fix;
    let n = under.card().expect("finite");

    // Frobenius: T(a)b = T(a R(b)); bilinear, so generators suffice
    let mut fail = None;
    'fr: for i in 0..under.rank() {
        for j in 0..fix.rank() {
            let a = under.generator(i);
            let b = fix.generator(j);
            let lhs = t.fix_ring.mul(&t.base.tr.apply(&a), &b);
            let rhs = t.base.tr.apply(&t.under_ring.mul(&a, &t.base.res.apply(&b)));
            if lhs != rhs {
                fail = Some(format!("generators ({i},{j})"));
                break 'fr;
            }
        }
    }
    let gen_checks = (under.rank() * fix.rank()) as u64;
    report.push(match fail {
        None => CheckReport::pass("T(a)b = T(aR(b))", gen_checks),
        Some(w) => CheckReport::fail("T(a)b = T(aR(b))", w, gen_checks),
    });

    // res(N(a)) = a w(a), all a
    let mut fail = None;
    for idx in 0..n {
        let a = under.elem_at(idx);
        let lhs = t.base.res.apply(t.norm(&a));
        let rhs = t.under_ring.mul(&a, &t.under_ring.winv(&a));
        if lhs != rhs {
            fail = Some(format!("a = {a:?}"));
            break;
        }
    }
    report.push(match fail {
        None => CheckReport::pass("RN(a) = a·w(a)", n as u64),
        Some(w) => CheckReport::fail("RN(a) = a·w(a)", w, n as u64),
    });

    // N(a+a') = N(a) + N(a') + T(a w(a')) and N(0) = 0; N multiplicative
    let mut fail_add = None;
    let mut fail_mul = None;
    for ia in 0..n {
        let a = under.elem_at(ia);
        for ib in 0..n {
            let b = under.elem_at(ib);
            if fail_add.is_none() {
                let lhs = t.norm(&under.add(&a, &b)).clone();
                let corr = t.base.tr.apply(&t.under_ring.mul(&a, &t.under_ring.winv(&b)));
                let rhs = fix.add(&fix.add(t.norm(&a), t.norm(&b)), &corr);
                if lhs != rhs {
                    fail_add = Some(format!("a = {a:?}, a' = {b:?}"));
                }
            }
            if fail_mul.is_none() {
                let lhs = t.norm(&t.under_ring.mul(&a, &b)).clone();
                let rhs = t.fix_ring.mul(t.norm(&a), t.norm(&b));
                if lhs != rhs {
                    fail_mul = Some(format!("a = {a:?}, a' = {b:?}"));
                }
            }
        }
    }
    let pair_checks = (n * n) as u64;
    report.push(match fail_add {
        None => CheckReport::pass("N(a+a') = N(a)+N(a')+T(a·w(a')) and N(0)=0", pair_checks),
        Some(w) => {
            CheckReport::fail("N(a+a') = N(a)+N(a')+T(a·w(a')) and N(0)=0", w, pair_checks)
        }
    });
    if !fix.is_zero(t.norm(&under.zero())) {
        report.push(CheckReport::fail("N(0) = 0", format!("{:?}", t.norm(&under.zero())), 1));
    }
    report.push(match fail_mul {
        None => CheckReport::pass("N multiplicative, N(1) = 1", pair_checks),
        Some(w) => CheckReport::fail("N multiplicative, N(1) = 1", w, pair_checks),
    });
    report
}

/// A morphism of Hermitian Mackey functors. The `unital` flag records whether
/// the morphism preserves multiplicative units (at both levels, when the fix
/// levels carry Tambara rings); section-type morphisms turn it off.
#[derive(Clone, Debug)]
pub struct HermMorphism {
    pub source: HermMackey,
    pub target: HermMackey,
    pub f_under: GroupHom,
    pub f_fix: GroupHom,
    pub unital: bool,
}

impl HermMorphism {
    pub fn identity(h: &HermMackey) -> Self {
        HermMorphism {
            source: h.clone(),
            target: h.clone(),
            f_under: GroupHom::identity(&h.base.under),
            f_fix: GroupHom::identity(&h.base.fix),
            unital: true,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &HermMorphism) -> HermMorphism {
        HermMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            f_under: self.f_under.compose(&other.f_under),
            f_fix: self.f_fix.compose(&other.f_fix),
            unital: self.unital && other.unital,
        }
    }

    /// Table equality of the two component maps.
    pub fn eq_as_maps(&self, other: &HermMorphism) -> bool {
        self.f_under.eq_as_maps(&other.f_under) && self.f_fix.eq_as_maps(&other.f_fix)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.f_under.is_isomorphism() && self.f_fix.is_isomorphism()
    }
}

/// Verifies that `f` is a morphism: compatibility with w, res, tr,
/// multiplicativity of the under-level map (unitality only if flagged), and
/// equivariance of the fix-level map.
pub fn check_herm_morphism(f: &HermMorphism) -> Report {
    let mut report = Report::new("hermitian morphism");
    let s = &f.source;
    let t = &f.target;
    report.push(eq_check(
        "f∘w = w∘f",
        &f.f_under.compose(&s.base.w),
        &t.base.w.compose(&f.f_under),
        s.base.under.rank() as u64,
    ));
    report.push(eq_check(
        "f∘res = res∘f",
        &f.f_under.compose(&s.base.res),
        &t.base.res.compose(&f.f_fix),
        s.base.fix.rank() as u64,
    ));
    report.push(eq_check(
        "f∘tr = tr∘f",
        &f.f_fix.compose(&s.base.tr),
        &t.base.tr.compose(&f.f_under),
        s.base.under.rank() as u64,
    ));

    // multiplicativity on generators (exact by additivity)
    let ru = s.base.under.rank();
    let mut fail = None;
    'mult: for i in 0..ru {
        for j in 0..ru {
            let a = s.base.under.generator(i);
            let b = s.base.under.generator(j);
            let lhs = f.f_under.apply(&s.ring.mul(&a, &b));
            let rhs = t.ring.mul(&f.f_under.apply(&a), &f.f_under.apply(&b));
            if lhs != rhs {
                fail = Some(format!("generators ({i},{j})"));
                break 'mult;
            }
        }
    }
    report.push(match fail {
        None => CheckReport::pass("f_under multiplicative", (ru * ru) as u64),
        Some(w) => CheckReport::fail("f_under multiplicative", w, (ru * ru) as u64),
    });
    if f.unital {
        let img = f.f_under.apply(&s.ring.one);
        report.push(if img == t.ring.one {
            CheckReport::pass("f_under(1) = 1", 1)
        } else {
            CheckReport::fail("f_under(1) = 1", format!("image {img:?}"), 1)
        });
    }

    // equivariance: f_fix(a·b) = f_under(a)·f_fix(b), one matrix identity per a
    let n = s.base.under.card().expect("finite");
    let mut fail = None;
    for idx in 0..n {
        let a = s.base.under.elem_at(idx);
        let lhs = f.f_fix.compose(s.action_hom(&a));
        let rhs = t.action_hom(&f.f_under.apply(&a)).compose(&f.f_fix);
        if !lhs.eq_as_maps(&rhs) {
            fail = Some(format!("a = {a:?}"));
            break;
        }
    }
    let checks = n as u64 * s.base.fix.rank() as u64;
    report.push(match fail {
        None => CheckReport::pass("f_fix equivariant: f(a·b) = f(a)·f(b)", checks),
        Some(w) => CheckReport::fail("f_fix equivariant: f(a·b) = f(a)·f(b)", w, checks),
    });
    report
}

/// The rank morphism of the base case: Burnside mod m to the underline of
/// Z/m, identity on the under level, `(b, c) -> b + 2c` on the fix level.
pub fn rank_map_base(m: u64) -> Result<HermMorphism> {
    let source = burnside_mod(m);
    let target = underline_of_ring(&zmod(m))?;
    let f_under = GroupHom::identity(&source.base.under);
    let images: Vec<Elem> = if m == 1 {
        vec![]
    } else {
        let pre = |x: Elem| target.base.res.preimage(&x).expect("fixed");
        vec![pre(vec![1]), pre(vec![2])]
    };
    let f_fix = GroupHom::from_images(&source.base.fix, &target.base.fix, &images)
        .map_err(Error::Invalid)?;
    Ok(HermMorphism { source, target, f_under, f_fix, unital: true })
}

/// Section of the rank morphism for odd m: identity on the under level,
/// `b -> (0, b/2)` on the fix level. Not unital for the fix-level
/// multiplications.
pub fn half_transfer_section_base(m: u64) -> Result<HermMorphism> {
    if m % 2 == 0 {
        return Err(Error::EvenModulus(m));
    }
    let source = underline_of_ring(&zmod(m))?;
    let target = burnside_mod(m);
    let f_under = GroupHom::identity(&source.base.under);
    let inv2 = ((m + 1) / 2) as i64; // 2^{-1} mod odd m
    let images: Vec<Elem> = if m == 1 {
        vec![]
    } else {
        let g = source.base.res.apply(&source.base.fix.generator(0));
        vec![target.base.fix.reduce(vec![0, inv2 * g[0]])]
    };
    let f_fix = GroupHom::from_images(&source.base.fix, &target.base.fix, &images)
        .map_err(Error::Invalid)?;
    Ok(HermMorphism { source, target, f_under, f_fix, unital: false })
}

/// Rank morphism between the group-Mackey functors over π: the rank map on
/// the π-fixed summand, identity on the free-orbit summand.
pub fn rank_map(m: u64, pi: &FinGroup) -> Result<HermMorphism> {
    let tau = pi.inversion_involution();
    let d = rank_map_base(m)?;
    crate::constructions::apply_to_morphism_group(&d, pi, &tau)
}

/// Section of [`rank_map`] over π, defined for odd m.
pub fn half_transfer_section(m: u64, pi: &FinGroup) -> Result<HermMorphism> {
    let tau = pi.inversion_involution();
    let s = half_transfer_section_base(m)?;
    crate::constructions::apply_to_morphism_group(&s, pi, &tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::matrix_ring;

    #[test]
    fn underline_z3() {
        let h = underline_of_ring(&zmod(3)).unwrap();
        assert_eq!(h.base.fix.invariant_factors(), (vec![3], 0));
        assert!(check_mackey_axioms(&h.base).passed());
        assert!(check_hermitian_axioms(&h, 0).passed());
        // transfer is multiplication by 2, action is a²b
        let g = h.base.fix.generator(0);
        let one = h.base.res.preimage(&vec![1]).unwrap();
        assert_eq!(h.base.tr.apply(&vec![1]), h.base.fix.scale(2, &one));
        assert_eq!(h.act(&vec![2], &g), h.base.fix.scale(4 % 3, &g));
    }

    #[test]
    fn underline_z4_transfer() {
        let h = underline_of_ring(&zmod(4)).unwrap();
        let rt = h.base.res.compose(&h.base.tr);
        assert_eq!(rt.apply(&vec![1]), vec![2]);
        assert!(check_hermitian_axioms(&h, 0).passed());
    }

    #[test]
    fn underline_m2_f3_transpose() {
        let m2 = matrix_ring(&zmod(3), 2);
        let h = underline_of_ring(&m2).unwrap();
        // symmetric matrices: 3 free entries
        assert_eq!(h.base.fix.card(), Some(27));
        assert!(check_hermitian_axioms(&h, 0).passed());
    }

    #[test]
    fn burnside_examples() {
        let a3 = burnside_mod(3);
        assert!(check_mackey_axioms(&a3.base).passed());
        assert!(check_hermitian_axioms(&a3, 0).passed());
        // 2·(1,0) = (2,1)
        assert_eq!(a3.act(&vec![2], &vec![1, 0]), vec![2, 1]);
        // res(tr(1)) = res(0,1) = 2 = 1 + w(1)
        assert_eq!(a3.base.res.apply(&a3.base.tr.apply(&vec![1])), vec![2]);
        // trivial functor at m = 1
        let a1 = burnside_mod(1);
        assert_eq!(a1.base.under.card(), Some(1));
        assert!(check_hermitian_axioms(&a1, 0).passed());
    }

    #[test]
    fn burnside_integral_shadow_mod5() {
        // 3·(1,0) = (3,3) evaluated in the mod-5 model
        let a5 = burnside_mod(5);
        assert_eq!(a5.act(&vec![3], &vec![1, 0]), vec![3, 3]);
    }

    #[test]
    fn broken_transfer_fails() {
        let a3 = burnside_mod(3);
        let broken =
            MackeyZ2 { tr: GroupHom::zero(&a3.base.under, &a3.base.fix), ..a3.base.clone() };
        let rep = check_mackey_axioms(&broken);
        assert!(!rep.passed());
        let failing = rep.first_failure().unwrap();
        assert_eq!(failing.name, "res∘tr = id + w");
    }

    #[test]
    fn wrong_action_fails_axiom_iv() {
        // a·b := ab instead of a²b over Z/3
        let good = underline_of_ring(&zmod(3)).unwrap();
        let fix = good.base.fix.clone();
        let bad = HermMackey::from_action_fn(good.base.clone(), good.ring.clone(), |a| {
            GroupHom::from_images(&fix, &fix, &[fix.scale(a[0], &fix.generator(0))]).unwrap()
        })
        .unwrap();
        let rep = check_hermitian_axioms(&bad, 0);
        assert!(!rep.passed());
        assert!(rep.checks.iter().any(|c| !c.passed && c.name.starts_with("axiom iv")));
    }

    #[test]
    fn tambara_burnside() {
        let t = burnside_tambara(3);
        assert!(check_tambara_axioms(&t).passed());
        // N(1) = (1,0), N(2) = (2,1)
        assert_eq!(t.norm(&vec![1]), &vec![1, 0]);
        assert_eq!(t.norm(&vec![2]), &vec![2, 1]);
        // the forgetful Hermitian structure equals burnside_mod
        let forget = t.forget();
        assert!(forget.same_tables(&burnside_mod(3)));
        assert!(check_hermitian_axioms(&forget, 0).passed());
        // 0-action kills everything
        assert_eq!(forget.act(&vec![0], &vec![1, 2]), vec![0, 0]);
    }

    #[test]
    fn tambara_underline_forgets_to_underline() {
        let t = underline_tambara(&zmod(3)).unwrap();
        assert!(check_tambara_axioms(&t).passed());
        let forget = t.forget();
        let direct = underline_of_ring(&zmod(3)).unwrap();
        assert!(forget.same_tables(&direct));
    }

    #[test]
    fn rank_and_section_base_case() {
        let d = rank_map_base(3).unwrap();
        assert!(check_herm_morphism(&d).passed());
        let s = half_transfer_section_base(3).unwrap();
        assert!(!s.unital);
        assert!(check_herm_morphism(&s).passed());
        // composite is the identity morphism
        let comp = d.compose(&s);
        assert!(comp.eq_as_maps(&HermMorphism::identity(&d.target)));
        // 1 -> (0, 2) since 2^{-1} = 2 mod 3
        let one = s.source.base.res.preimage(&vec![1]).unwrap();
        assert_eq!(s.f_fix.apply(&one), vec![0, 2]);
        // and 1 -> (0, 3) mod 5
        let s5 = half_transfer_section_base(5).unwrap();
        let one5 = s5.source.base.res.preimage(&vec![1]).unwrap();
        assert_eq!(s5.f_fix.apply(&one5), vec![0, 3]);
        // the fix-level unit is not preserved (non-unital on Tambara fix rings)
        let a3 = burnside_tambara(3);
        let u3 = underline_tambara(&zmod(3)).unwrap();
        let unit_img = s.f_fix.apply(&u3.fix_ring.one);
        assert_ne!(unit_img, a3.fix_ring.one);
        // even modulus rejected
        assert!(matches!(half_transfer_section_base(4), Err(Error::EvenModulus(4))));
    }

    #[test]
    fn identity_morphism_passes() {
        let h = burnside_mod(3);
        assert!(check_herm_morphism(&HermMorphism::identity(&h)).passed());
    }
}
