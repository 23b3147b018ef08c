//! Hermitian forms over a Hermitian Mackey functor: classification up to
//! isometry, the Grothendieck group KH0, the hyperbolic map and the Witt
//! group, and the Kronecker pairing for Tambara coefficients.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::abgroup::{Elem, FinAbGroup};
use crate::constructions::{mat_action, mat_restriction, MatLayout};
use crate::error::{Error, Result};
use crate::imat::IMat;
use crate::mackey::{HermMackey, HermMorphism, TambaraZ2};
use crate::presentation::{PresentedMap, PresentedGroup, QuotientPresentation, Stability};
use crate::ring::{matrix_ring, FinRingInv, RMatrix};

/// An n-dimensional Hermitian form: an element of the fix level of the matrix
/// Mackey functor, with off-diagonal entries in the under level and diagonal
/// entries in the fix level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermForm {
    pub n: usize,
    pub coords: Elem,
}

/// Shared context for form computations over one base and dimension.
pub struct FormsCtx {
    pub layout: MatLayout,
    /// the fix level of the matrix Mackey functor, as an abelian group
    pub fix: FinAbGroup,
    mat_ring: FinRingInv,
}

impl FormsCtx {
    pub fn new(base: &HermMackey, n: usize) -> Self {
        let layout = MatLayout { n, ru: base.under().rank(), rf: base.fix().rank() };
        let fix = layout.fix_group(base);
        let mat_ring = matrix_ring(&base.ring, n);
        FormsCtx { layout, fix, mat_ring }
    }

    pub fn n(&self) -> usize {
        self.layout.n
    }
}

/// True when the restriction of the element is invertible.
pub fn is_form(base: &HermMackey, ctx: &FormsCtx, coords: &Elem) -> bool {
    let r = mat_restriction(base, &ctx.layout, coords);
    ctx.mat_ring.is_unit(&r.flatten())
}

/// The matrix action `A · B` on fix-level elements.
pub fn form_action(base: &HermMackey, ctx: &FormsCtx, a: &RMatrix, coords: &Elem) -> Elem {
    mat_action(base, &ctx.layout, a, coords)
}

/// Outcome of testing a matrix as a morphism of forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsometryStatus {
    Isometry,
    /// `B = w(λ)·B'` holds but λ is not invertible.
    NonInvertibleMorphism,
    NotMorphism,
}

/// Tests `B = w(λ)·B'` together with invertibility of λ.
pub fn isometry_status(
    base: &HermMackey,
    ctx: &FormsCtx,
    lambda: &RMatrix,
    b: &HermForm,
    b2: &HermForm,
) -> IsometryStatus {
    let img = form_action(base, ctx, &lambda.winv(&base.ring), &b2.coords);
    if img != b.coords {
        return IsometryStatus::NotMorphism;
    }
    if ctx.mat_ring.is_unit(&lambda.flatten()) {
        IsometryStatus::Isometry
    } else {
        IsometryStatus::NonInvertibleMorphism
    }
}

pub fn is_isometry(
    base: &HermMackey,
    ctx: &FormsCtx,
    lambda: &RMatrix,
    b: &HermForm,
    b2: &HermForm,
) -> bool {
    isometry_status(base, ctx, lambda, b, b2) == IsometryStatus::Isometry
}

/// Block sum of two forms.
pub fn block_sum(base: &HermMackey, b: &HermForm, b2: &HermForm) -> HermForm {
    let (n, m) = (b.n, b2.n);
    let la = MatLayout { n, ru: base.under().rank(), rf: base.fix().rank() };
    let lb = MatLayout { n: m, ..la.clone() };
    let lay = MatLayout { n: n + m, ..la.clone() };
    let mut out = vec![0i64; lay.fix_rank()];
    for i in 0..n + m {
        for j in i + 1..n + m {
            let entry = if j < n {
                la.off_entry(&b.coords, i, j)
            } else if i >= n {
                lb.off_entry(&b2.coords, i - n, j - n)
            } else {
                continue;
            };
            let range = lay.off_range(i, j);
            out[range].copy_from_slice(&entry);
        }
        let d = if i < n {
            la.diag_entry(&b.coords, i)
        } else {
            lb.diag_entry(&b2.coords, i - n)
        };
        let range = lay.diag_range(i);
        out[range].copy_from_slice(&d);
    }
    HermForm { n: n + m, coords: out }
}

/// Permutation matrix over the under ring: column j carries the unit in row
/// `perm[j]`.
pub fn perm_matrix(ring: &FinRingInv, perm: &[usize]) -> RMatrix {
    let n = perm.len();
    let mut m = RMatrix::from_entries(n, vec![ring.zero(); n * n]);
    for (j, &i) in perm.iter().enumerate() {
        m.set(i, j, ring.one.clone());
    }
    m
}

/// The block-swap isometry `B ⊕ B' -> B' ⊕ B` for dimensions n and m.
pub fn sym_permutation(base: &HermMackey, n: usize, m: usize) -> RMatrix {
    // position i of B⊕B' is found at position m+i of B'⊕B, and n+j at j
    let perm: Vec<usize> = (0..n + m).map(|i| if i < n { m + i } else { i - n }).collect();
    perm_matrix(&base.ring, &perm)
}

/// The hyperbolic form of total dimension 2n: n-fold block sum of the
/// two-dimensional form with zero diagonal and unit off-diagonal entry.
pub fn hyperbolic(base: &HermMackey, n: usize) -> HermForm {
    let lay = MatLayout { n: 2, ru: base.under().rank(), rf: base.fix().rank() };
    let mut coords = vec![0i64; lay.fix_rank()];
    let range = lay.off_range(0, 1);
    coords[range].copy_from_slice(&base.ring.one);
    let h1 = HermForm { n: 2, coords };
    let mut out = h1.clone();
    for _ in 1..n {
        out = block_sum(base, &out, &h1);
    }
    out
}

/// The zero-dimensional unit of block sum.
pub fn empty_form() -> HermForm {
    HermForm { n: 0, coords: vec![] }
}

/// Kronecker product of forms over a Tambara base: diagonal entries multiply
/// in the fix-level ring, off-diagonal entries are products of restrictions.
pub fn kronecker_product(
    tamb: &TambaraZ2,
    base: &HermMackey,
    b: &HermForm,
    b2: &HermForm,
) -> Result<HermForm> {
    if tamb.base.under.orders() != base.under().orders()
        || tamb.base.fix.orders() != base.fix().orders()
    {
        return Err(Error::NotTambara);
    }
    let (n, m) = (b.n, b2.n);
    if n == 0 || m == 0 {
        return Ok(empty_form());
    }
    let la = MatLayout { n, ru: base.under().rank(), rf: base.fix().rank() };
    let lb = MatLayout { n: m, ..la.clone() };
    let lay = MatLayout { n: n * m, ..la.clone() };
    let ra = mat_restriction(base, &la, &b.coords);
    let rb = mat_restriction(base, &lb, &b2.coords);
    let mut out = vec![0i64; lay.fix_rank()];
    for i in 0..n * m {
        let (k, u) = (i / m, i % m);
        for j in i + 1..n * m {
            let (l, v) = (j / m, j % m);
            let entry = base.ring.mul(ra.at(k, l), rb.at(u, v));
            let range = lay.off_range(i, j);
            out[range].copy_from_slice(&entry);
        }
        let d = tamb
            .fix_ring
            .mul(&la.diag_entry(&b.coords, k), &lb.diag_entry(&b2.coords, u));
        let range = lay.diag_range(i);
        out[range].copy_from_slice(&d);
    }
    Ok(HermForm { n: n * m, coords: out })
}

/// The one-dimensional unit form of the Kronecker product.
pub fn unit_form(tamb: &TambaraZ2) -> HermForm {
    HermForm { n: 1, coords: tamb.fix_ring.one.clone() }
}

/// Kronecker product of plain matrices over the under ring.
pub fn kron_rmatrix(ring: &FinRingInv, a: &RMatrix, b: &RMatrix) -> RMatrix {
    let (n, m) = (a.n, b.n);
    let mut out = RMatrix::from_entries(n * m, vec![ring.zero(); (n * m) * (n * m)]);
    for i in 0..n * m {
        for j in 0..n * m {
            let v = ring.mul(a.at(i / m, j / m), b.at(i % m, j % m));
            out.set(i, j, v);
        }
    }
    out
}

/// The shuffle permutation realizing `B ⊗ (B'⊕B'') ≅ (B⊗B') ⊕ (B⊗B'')`
/// for dimensions n, m1, m2.
pub fn kron_shuffle(n: usize, m1: usize, m2: usize) -> Vec<usize> {
    // sends the index (k, u) of the left-hand side to its slot on the right
    (0..n * (m1 + m2))
        .map(|i| {
            let (k, u) = (i / (m1 + m2), i % (m1 + m2));
            if u < m1 {
                k * m1 + u
            } else {
                n * m1 + k * m2 + (u - m1)
            }
        })
        .collect()
}

/// Hard-coded per-entry evaluation of the four-dimensional product of two
/// two-dimensional forms, used as an independent oracle for
/// [`kronecker_product`].
pub fn kronecker_2x2_oracle(
    tamb: &TambaraZ2,
    base: &HermMackey,
    b: &HermForm,
    b2: &HermForm,
) -> Elem {
    assert!(b.n == 2 && b2.n == 2);
    let la = MatLayout { n: 2, ru: base.under().rank(), rf: base.fix().rank() };
    let lay = MatLayout { n: 4, ..la.clone() };
    let ring = &base.ring;
    let res = &base.base.res;
    let fr = &tamb.fix_ring;
    let b11 = la.diag_entry(&b.coords, 0);
    let b22 = la.diag_entry(&b.coords, 1);
    let b12 = la.off_entry(&b.coords, 0, 1);
    let c11 = la.diag_entry(&b2.coords, 0);
    let c22 = la.diag_entry(&b2.coords, 1);
    let c12 = la.off_entry(&b2.coords, 0, 1);
    let mut out = vec![0i64; lay.fix_rank()];
    let mut put_off = |i: usize, j: usize, v: Elem| {
        let range = lay.off_range(i, j);
        out[range].copy_from_slice(&v);
    };
    put_off(0, 1, ring.mul(&res.apply(&b11), &c12));
    put_off(0, 2, ring.mul(&b12, &res.apply(&c11)));
    put_off(0, 3, ring.mul(&b12, &c12));
    put_off(1, 2, ring.mul(&b12, &ring.winv(&c12)));
    put_off(1, 3, ring.mul(&b12, &res.apply(&c22)));
    put_off(2, 3, ring.mul(&res.apply(&b22), &c12));
    for (i, v) in [
        fr.mul(&b11, &c11),
        fr.mul(&b11, &c22),
        fr.mul(&b22, &c11),
        fr.mul(&b22, &c22),
    ]
    .into_iter()
    .enumerate()
    {
        let range = lay.diag_range(i);
        out[range].copy_from_slice(&v);
    }
    out
}

/// Generating set for GL_n over a finite ring: elementary matrices on the
/// additive generators plus diagonal units. Finite rings have stable rank
/// one, so these generate the whole general linear group.
fn gl_generators(ring: &FinRingInv, n: usize) -> Vec<RMatrix> {
    let units = ring.units();
    let mut gens = Vec::new();
    if n == 1 {
        for u in units {
            gens.push(RMatrix::from_entries(1, vec![u]));
        }
        return gens;
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for t in 0..ring.rank() {
                let mut m = RMatrix::identity(ring, n);
                m.set(i, j, ring.add.generator(t));
                gens.push(m);
            }
        }
    }
    for pos in 0..n {
        for u in &units {
            let mut m = RMatrix::identity(ring, n);
            m.set(pos, pos, u.clone());
            gens.push(m);
        }
    }
    gens
}

/// Complete isometry classification of n-dimensional forms.
#[derive(Clone, Debug)]
pub struct IsoClasses {
    pub n: usize,
    /// lexicographically least member of each class, in discovery order
    pub reps: Vec<Elem>,
    pub sizes: Vec<u64>,
    /// class index keyed by the fix-level element index
    pub class_of: HashMap<u128, usize>,
    pub total_forms: u64,
}

/// Enumerates all isometry classes by orbit closure under a generating set of
/// the general linear group acting through `B -> w(λ)·B`.
pub fn enumerate_iso_classes(
    base: &HermMackey,
    n: usize,
    max_candidates: u128,
) -> Result<IsoClasses> {
    let ctx = FormsCtx::new(base, n);
    let card = ctx
        .fix
        .card()
        .ok_or_else(|| Error::TooLarge("infinite carrier".into()))?;
    if card > max_candidates {
        return Err(Error::TooLarge(format!(
            "candidate space {card} exceeds bound {max_candidates}"
        )));
    }
    // the orbit of the right action B·λ = w(λ)·B is also the orbit of the
    // left monoid action by invertible matrices, so generator closure works
    let gens = gl_generators(&base.ring, n);
    let mut class_of: HashMap<u128, usize> = HashMap::new();
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut total = 0u64;
    for idx in 0..card {
        if class_of.contains_key(&idx) {
            continue;
        }
        let seed = ctx.fix.elem_at(idx);
        if !is_form(base, &ctx, &seed) {
            continue;
        }
        let cls = reps.len();
        // earlier-indexed members would already be visited, so the seed is
        // the lexicographic minimum of its orbit
        reps.push(seed.clone());
        let mut size = 0u64;
        let mut queue = VecDeque::new();
        class_of.insert(idx, cls);
        queue.push_back(seed);
        while let Some(b) = queue.pop_front() {
            size += 1;
            for g in &gens {
                let img = form_action(base, &ctx, g, &b);
                let key = ctx.fix.index_of(&img);
                if let std::collections::hash_map::Entry::Vacant(e) = class_of.entry(key) {
                    e.insert(cls);
                    queue.push_back(img);
                }
            }
        }
        sizes.push(size);
        total += size;
    }
    Ok(IsoClasses { n, reps, sizes, class_of, total_forms: total })
}

/// The truncated Grothendieck group of isometry classes under block sum.
pub struct Kh0 {
    pub dim_bound: usize,
    /// classes per dimension; index k holds dimension k+1
    pub per_dim: Vec<IsoClasses>,
    pub group: PresentedGroup,
    pres: QuotientPresentation,
    gen_offset: Vec<usize>,
}

impl Kh0 {
    pub fn num_generators(&self) -> usize {
        self.per_dim.iter().map(|c| c.reps.len()).sum()
    }

    pub fn generator_column(&self, dim: usize, class: usize) -> usize {
        self.gen_offset[dim - 1] + class
    }

    /// Generator column of the class of a form.
    pub fn class_of_form(&self, base: &HermMackey, form: &HermForm) -> Option<usize> {
        if form.n == 0 || form.n > self.dim_bound {
            return None;
        }
        let ctx = FormsCtx::new(base, form.n);
        let idx = ctx.fix.index_of(&form.coords);
        self.per_dim[form.n - 1].class_of.get(&idx).map(|&c| self.generator_column(form.n, c))
    }

    pub fn presentation(&self) -> &QuotientPresentation {
        &self.pres
    }
}

fn kh0_relations(
    base: &HermMackey,
    per_dim: &[IsoClasses],
    bound: usize,
    gen_offset: &[usize],
    num_gens: usize,
) -> Vec<Vec<i128>> {
    let mut rows: Vec<Vec<i128>> = Vec::new();
    for n in 1..=bound {
        for m in n..=bound {
            if n + m > bound {
                continue;
            }
            let ctx = FormsCtx::new(base, n + m);
            for (i, rep_a) in per_dim[n - 1].reps.iter().enumerate() {
                for (j, rep_b) in per_dim[m - 1].reps.iter().enumerate() {
                    let a = HermForm { n, coords: rep_a.clone() };
                    let b = HermForm { n: m, coords: rep_b.clone() };
                    let sum = block_sum(base, &a, &b);
                    let key = ctx.fix.index_of(&sum.coords);
                    let cls = *per_dim[n + m - 1]
                        .class_of
                        .get(&key)
                        .expect("block sum of forms is a form");
                    let mut row = vec![0i128; num_gens];
                    row[gen_offset[n - 1] + i] += 1;
                    row[gen_offset[m - 1] + j] += 1;
                    row[gen_offset[n + m - 1] + cls] -= 1;
                    rows.push(row);
                }
            }
        }
    }
    rows
}

fn presentation_from_rows(num_gens: usize, rows: Vec<Vec<i128>>) -> QuotientPresentation {
    let rel = if rows.is_empty() { IMat::zeros(0, num_gens) } else { IMat::from_rows(rows) };
    QuotientPresentation::new(num_gens, &rel)
}

/// Grothendieck group of forms of dimension up to `dim_bound`, with a
/// stability flag comparing against the bound one lower.
pub fn kh0(base: &HermMackey, dim_bound: usize, max_candidates: u128) -> Result<Kh0> {
    let mut per_dim = Vec::with_capacity(dim_bound);
    for n in 1..=dim_bound {
        per_dim.push(enumerate_iso_classes(base, n, max_candidates)?);
    }
    let mut gen_offset = Vec::with_capacity(dim_bound);
    let mut acc = 0usize;
    for cls in &per_dim {
        gen_offset.push(acc);
        acc += cls.reps.len();
    }
    let rows = kh0_relations(base, &per_dim, dim_bound, &gen_offset, acc);
    let pres = presentation_from_rows(acc, rows);
    let mut group = pres.group();
    group.stability = Some(if dim_bound < 2 {
        Stability::Truncated
    } else {
        let prev_gens = gen_offset[dim_bound - 1];
        let prev_rows =
            kh0_relations(base, &per_dim[..dim_bound - 1], dim_bound - 1, &gen_offset, prev_gens);
        let prev = presentation_from_rows(prev_gens, prev_rows).group();
        if prev.same_group(&group) {
            Stability::Stable
        } else {
            Stability::Unstable
        }
    });
    Ok(Kh0 { dim_bound, per_dim, group, pres, gen_offset })
}

/// The Witt group: cokernel of the hyperbolic class inside KH0. For
/// `dim_bound < 2` the hyperbolic form does not fit and the result is only a
/// truncation.
pub fn witt0(base: &HermMackey, dim_bound: usize, max_candidates: u128) -> Result<PresentedGroup> {
    let kh = kh0(base, dim_bound, max_candidates)?;
    if dim_bound < 2 {
        let mut g = kh.group.clone();
        g.stability = Some(Stability::Truncated);
        return Ok(g);
    }
    let hyp = hyperbolic(base, 1);
    let hyp_col = kh.class_of_form(base, &hyp).expect("hyperbolic class present");
    let witt_at = |bound: usize| -> PresentedGroup {
        let gens: usize = kh.per_dim[..bound].iter().map(|c| c.reps.len()).sum();
        let mut rows = kh0_relations(base, &kh.per_dim[..bound], bound, &kh.gen_offset, gens);
        let mut hyp_row = vec![0i128; gens];
        hyp_row[hyp_col] = 1;
        rows.push(hyp_row);
        presentation_from_rows(gens, rows).group()
    };
    let mut group = witt_at(dim_bound);
    let stable = matches!(kh.group.stability, Some(Stability::Stable))
        && witt_at(dim_bound - 1).same_group(&group);
    group.stability = Some(if stable { Stability::Stable } else { Stability::Unstable });
    Ok(group)
}

/// Entrywise image of a form under a morphism of Hermitian Mackey functors.
pub fn form_image(f: &HermMorphism, form: &HermForm) -> HermForm {
    let n = form.n;
    let src_lay = MatLayout { n, ru: f.source.under().rank(), rf: f.source.fix().rank() };
    let tgt_lay = MatLayout { n, ru: f.target.under().rank(), rf: f.target.fix().rank() };
    let mut out = vec![0i64; tgt_lay.fix_rank()];
    for i in 0..n {
        for j in i + 1..n {
            let v = f.f_under.apply(&src_lay.off_entry(&form.coords, i, j));
            let range = tgt_lay.off_range(i, j);
            out[range].copy_from_slice(&v);
        }
        let v = f.f_fix.apply(&src_lay.diag_entry(&form.coords, i));
        let range = tgt_lay.diag_range(i);
        out[range].copy_from_slice(&v);
    }
    HermForm { n, coords: out }
}

/// The map induced on truncated Grothendieck groups by a morphism, given as
/// an integer matrix on the class generators.
pub struct InducedKh0 {
    pub src: Kh0,
    pub tgt: Kh0,
    pub ambient: IMat,
}

impl InducedKh0 {
    pub fn canonical(&self) -> PresentedMap {
        PresentedMap::from_ambient(self.src.presentation(), self.tgt.presentation(), &self.ambient)
    }
}

/// Builds the induced map on KH0, verifying on every form that images are
/// forms and that isometric forms land in the same class.
pub fn induced_kh0_map(
    f: &HermMorphism,
    dim_bound: usize,
    max_candidates: u128,
) -> Result<InducedKh0> {
    let src = kh0(&f.source, dim_bound, max_candidates)?;
    let tgt = kh0(&f.target, dim_bound, max_candidates)?;
    let mut ambient = IMat::zeros(tgt.num_generators(), src.num_generators());
    for n in 1..=dim_bound {
        let src_ctx = FormsCtx::new(&f.source, n);
        let tgt_ctx = FormsCtx::new(&f.target, n);
        let mut rep_class: Vec<usize> = Vec::new();
        for (i, rep) in src.per_dim[n - 1].reps.iter().enumerate() {
            let img = form_image(f, &HermForm { n, coords: rep.clone() });
            if !is_form(&f.target, &tgt_ctx, &img.coords) {
                return Err(Error::NotWellDefined(format!(
                    "image of dimension-{n} representative {rep:?} is not a form"
                )));
            }
            let key = tgt_ctx.fix.index_of(&img.coords);
            let cls = *tgt.per_dim[n - 1].class_of.get(&key).expect("image class enumerated");
            rep_class.push(cls);
            ambient[(tgt.gen_offset[n - 1] + cls, src.gen_offset[n - 1] + i)] = 1;
        }
        // descent to classes: every member of a class must map into the
        // class of its representative's image
        for (&key, &cls) in &src.per_dim[n - 1].class_of {
            let b = HermForm { n, coords: src_ctx.fix.elem_at(key) };
            let img = form_image(f, &b);
            if !is_form(&f.target, &tgt_ctx, &img.coords) {
                return Err(Error::NotWellDefined(format!(
                    "image of form {:?} is not a form",
                    b.coords
                )));
            }
            let ikey = tgt_ctx.fix.index_of(&img.coords);
            if tgt.per_dim[n - 1].class_of.get(&ikey) != Some(&rep_class[cls]) {
                return Err(Error::NotWellDefined(format!(
                    "isometric forms map to different classes at dimension {n}"
                )));
            }
        }
    }
    Ok(InducedKh0 { src, tgt, ambient })
}
