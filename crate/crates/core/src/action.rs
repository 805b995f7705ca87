//! The monomial two-sided action of `U = U_n(q)` on idempotent labels `[A]`, `A` strictly
//! lower triangular.
//!
//! Right multiplication by `x_{ij}(α)` is the truncated column operation "add `-α` times
//! column `j` to column `i`, then clear everything on or above the diagonal", with the
//! scalar `θ(α A_{ij})`. Left multiplication by `x_{il}(α)` is the truncated row operation
//! "add `-α` times row `i` to row `l`" with scalar `θ(α A_{il})`. Scalars are `p`-th roots
//! of unity and are carried as exponents mod `p`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::roots::{positions, triangle_len, RootPos, MAX_N};

/// A strictly lower triangular matrix, dense over the lower triangle.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NilMatrix {
    n: usize,
    entries: Box<[u16]>,
}

impl fmt::Debug for NilMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<String> = self.nonzero_entries().iter().map(|(p, v)| format!("{p}={v}")).collect();
        write!(f, "NilMatrix[n={}; {}]", self.n, nz.join(", "))
    }
}

impl NilMatrix {
    pub fn zero(n: usize) -> Self {
        NilMatrix { n, entries: vec![0; triangle_len(n)].into_boxed_slice() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, p: RootPos) -> FieldElement {
        FieldElement(self.entries[p.index()])
    }

    #[inline]
    pub fn set(&mut self, p: RootPos, v: FieldElement) {
        self.entries[p.index()] = v.0;
    }

    /// Entry `(i, j)` of the full `n x n` matrix; zero on and above the diagonal.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> FieldElement {
        if j < i {
            FieldElement(self.entries[RootPos::new(i, j).index()])
        } else {
            FieldElement::ZERO
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&c| c == 0)
    }

    pub fn codes(&self) -> &[u16] {
        &self.entries
    }

    pub fn nonzero_entries(&self) -> Vec<(RootPos, FieldElement)> {
        positions(self.n).map(|p| (p, self.get(p))).filter(|(_, v)| !v.is_zero()).collect()
    }
}

/// `ζ_p^exponent · [matrix]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledIdempotent {
    pub exponent: u32,
    pub matrix: NilMatrix,
}

impl ScaledIdempotent {
    pub fn unscaled(matrix: NilMatrix) -> Self {
        ScaledIdempotent { exponent: 0, matrix }
    }
}

/// An element of `U`: the below-diagonal entries of a lower unitriangular matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    n: usize,
    entries: Box<[u16]>,
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<String> = positions(self.n)
            .filter(|&p| self.entries[p.index()] != 0)
            .map(|p| format!("{p}={}", self.entries[p.index()]))
            .collect();
        write!(f, "GroupElement[n={}; {}]", self.n, nz.join(", "))
    }
}

impl GroupElement {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, p: RootPos) -> FieldElement {
        FieldElement(self.entries[p.index()])
    }

    #[inline]
    pub fn set(&mut self, p: RootPos, v: FieldElement) {
        self.entries[p.index()] = v.0;
    }

    /// Entry of the full unitriangular matrix.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> FieldElement {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => FieldElement::ONE,
            std::cmp::Ordering::Greater => FieldElement(self.entries[RootPos::new(i, j).index()]),
            std::cmp::Ordering::Less => FieldElement::ZERO,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(|&c| c == 0)
    }

    pub fn codes(&self) -> &[u16] {
        &self.entries
    }

    pub fn support(&self) -> Vec<RootPos> {
        positions(self.n).filter(|&p| self.entries[p.index()] != 0).collect()
    }
}

/// Which side a group element acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

/// Wire form of a matrix: `{"n": 4, "q": "2", "entries": [[3, 1, 1], [4, 2, 1]]}`.
/// `q` may be omitted when the field is fixed elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    pub entries: Vec<[u32; 3]>,
}

/// Parses an inline entry list such as `[[3,1,1],[4,2,1]]`.
pub fn parse_entries(text: &str) -> Result<Vec<[u32; 3]>> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("entries: {e}")))
}

/// The group `U_n(q)` together with its action on idempotent labels.
#[derive(Clone, Debug)]
pub struct UnitriGroup {
    n: usize,
    field: Arc<FieldSpec>,
}

impl UnitriGroup {
    pub fn new(n: usize, field: Arc<FieldSpec>) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::UnsupportedDimension(n));
        }
        Ok(UnitriGroup { n, field })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<FieldSpec> {
        Arc::clone(&self.field)
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// Number of lower-triangle positions, `n(n-1)/2`.
    pub fn dim(&self) -> usize {
        triangle_len(self.n)
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n == self.n {
            Ok(())
        } else {
            Err(Error::SizeMismatch { expected: self.n, found: n })
        }
    }

    pub fn check_pos(&self, p: RootPos) -> Result<RootPos> {
        RootPos::checked(p.i, p.j, self.n)
    }

    // ---- matrices -------------------------------------------------------------------

    pub fn zero_matrix(&self) -> NilMatrix {
        NilMatrix::zero(self.n)
    }

    /// Builds a matrix from `(i, j, code)` triples; zero codes are allowed and ignored.
    pub fn matrix(&self, entries: &[(usize, usize, u32)]) -> Result<NilMatrix> {
        let mut m = self.zero_matrix();
        for &(i, j, code) in entries {
            let p = RootPos::checked(i, j, self.n)?;
            m.set(p, self.field.element(code)?);
        }
        Ok(m)
    }

    pub fn matrix_from_entries(&self, entries: &[[u32; 3]]) -> Result<NilMatrix> {
        let triples: Vec<(usize, usize, u32)> = entries.iter().map(|e| (e[0] as usize, e[1] as usize, e[2])).collect();
        self.matrix(&triples)
    }

    /// Reads a [`MatrixDoc`], rejecting a size or field that disagrees with this group.
    pub fn matrix_from_doc(&self, doc: &MatrixDoc) -> Result<NilMatrix> {
        self.check_n(doc.n)?;
        if let Some(q) = &doc.q {
            let (p, k) = crate::field::parse_field_name(q)?;
            if (p, k) != (self.field.p(), self.field.k()) {
                return Err(Error::Parse(format!("matrix is over q = {q}, expected {}", self.field.name())));
            }
        }
        self.matrix_from_entries(&doc.entries)
    }

    pub fn parse_matrix_json(&self, text: &str) -> Result<NilMatrix> {
        let doc: MatrixDoc = serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix: {e}")))?;
        self.matrix_from_doc(&doc)
    }

    pub fn to_doc(&self, a: &NilMatrix) -> MatrixDoc {
        let entries = a.nonzero_entries().iter().map(|&(p, v)| [p.i as u32, p.j as u32, v.code()]).collect();
        MatrixDoc { n: a.n(), q: Some(self.field.name()), entries }
    }

    /// The matrix with index `idx` in the mixed-radix enumeration of `V`.
    pub fn matrix_from_index(&self, mut idx: u64) -> NilMatrix {
        let q = self.q() as u64;
        let mut m = self.zero_matrix();
        for slot in m.entries.iter_mut() {
            *slot = (idx % q) as u16;
            idx /= q;
        }
        m
    }

    /// Size of `V` (equivalently of `U`) if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        (self.q() as u64).checked_pow(self.dim() as u32)
    }

    /// Every matrix in `V`; intended for tiny `n`, `q`.
    pub fn all_matrices(&self) -> impl Iterator<Item = NilMatrix> + '_ {
        let total = self.order().expect("V too large to enumerate");
        (0..total).map(move |i| self.matrix_from_index(i))
    }

    // ---- group elements -------------------------------------------------------------

    pub fn identity(&self) -> GroupElement {
        GroupElement { n: self.n, entries: vec![0; self.dim()].into_boxed_slice() }
    }

    /// `x_{ij}(α) = 1 + α ε_{ij}`.
    pub fn root_element(&self, p: RootPos, alpha: FieldElement) -> GroupElement {
        let mut g = self.identity();
        g.set(p, alpha);
        g
    }

    pub fn element(&self, entries: &[(usize, usize, u32)]) -> Result<GroupElement> {
        let mut g = self.identity();
        for &(i, j, code) in entries {
            let p = RootPos::checked(i, j, self.n)?;
            g.set(p, self.field.element(code)?);
        }
        Ok(g)
    }

    pub fn element_from_index(&self, idx: u64) -> GroupElement {
        let m = self.matrix_from_index(idx);
        GroupElement { n: self.n, entries: m.entries }
    }

    pub fn all_elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let total = self.order().expect("U too large to enumerate");
        (0..total).map(move |i| self.element_from_index(i))
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let f = &*self.field;
        let mut out = self.identity();
        for p in positions(self.n) {
            let (a, b) = (p.i, p.j);
            let mut acc = f.add(g.get(p), h.get(p));
            for c in b + 1..a {
                let x = g.at(a, c);
                if !x.is_zero() {
                    acc = f.add(acc, f.mul(x, h.at(c, b)));
                }
            }
            out.set(p, acc);
        }
        out
    }

    pub fn inv(&self, g: &GroupElement) -> GroupElement {
        let f = &*self.field;
        let mut v = self.identity();
        // v[a][b] = -(g[a][b] + sum_{b<c<a} g[a][c] v[c][b]), rows in increasing order
        for a in 2..=self.n {
            for b in (1..a).rev() {
                let mut acc = g.at(a, b);
                for c in b + 1..a {
                    acc = f.add(acc, f.mul(g.at(a, c), v.at(c, b)));
                }
                v.set(RootPos::new(a, b), f.neg(acc));
            }
        }
        v
    }

    /// `[g, h] = g^{-1} h^{-1} g h`.
    pub fn commutator(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let gi = self.inv(g);
        let hi = self.inv(h);
        self.mul(&self.mul(&gi, &hi), &self.mul(g, h))
    }

    /// The fixed factorization order: column by column from the left, bottom-up within
    /// each column.
    pub fn factor_order(&self) -> Vec<RootPos> {
        (1..self.n).flat_map(|j| (j + 1..=self.n).rev().map(move |i| RootPos::new(i, j))).collect()
    }

    /// Writes `u = ∏ x_p(α_p)` over [`Self::factor_order`].
    pub fn factor(&self, u: &GroupElement) -> Vec<(RootPos, FieldElement)> {
        let f = &*self.field;
        let order = self.factor_order();
        let mut rem = u.clone();
        let mut alphas = vec![FieldElement::ZERO; order.len()];
        // peel factors off the right end: rem <- rem · x_p(-α)
        for (slot, &p) in order.iter().enumerate().rev() {
            let alpha = rem.get(p);
            alphas[slot] = alpha;
            if !alpha.is_zero() {
                let neg = self.root_element(p, f.neg(alpha));
                rem = self.mul(&rem, &neg);
            }
        }
        debug_assert!(rem.is_identity());
        order.into_iter().zip(alphas).collect()
    }

    pub fn product(&self, factors: &[(RootPos, FieldElement)]) -> GroupElement {
        factors.iter().fold(self.identity(), |acc, &(p, a)| self.mul(&acc, &self.root_element(p, a)))
    }

    // ---- the permutation parts -------------------------------------------------------

    /// In place: `A ← A.x_{ij}(α)`, the truncated column operation.
    #[inline]
    pub fn permute_right_root(&self, m: &mut NilMatrix, p: RootPos, alpha: FieldElement) {
        let f = &*self.field;
        let (i, j) = (p.i, p.j);
        for k in i + 1..=self.n {
            let src = m.at(k, j);
            if !src.is_zero() {
                let dst = RootPos::new(k, i);
                m.set(dst, f.sub(m.get(dst), f.mul(alpha, src)));
            }
        }
    }

    /// In place: `A ← x_{il}(α).A`, the truncated row operation.
    #[inline]
    pub fn permute_left_root(&self, m: &mut NilMatrix, p: RootPos, alpha: FieldElement) {
        let f = &*self.field;
        let (i, l) = (p.i, p.j);
        for k in 1..l {
            let src = m.at(i, k);
            if !src.is_zero() {
                let dst = RootPos::new(l, k);
                m.set(dst, f.sub(m.get(dst), f.mul(alpha, src)));
            }
        }
    }

    pub fn permute_root(&self, side: Side, m: &mut NilMatrix, p: RootPos, alpha: FieldElement) {
        match side {
            Side::Right => self.permute_right_root(m, p, alpha),
            Side::Left => self.permute_left_root(m, p, alpha),
        }
    }

    // ---- the monomial action ---------------------------------------------------------

    fn add_exponent(&self, e: u32, x: FieldElement) -> u32 {
        (e + self.field.theta_exponent(x)) % self.field.p()
    }

    /// `[A] x_{ij}(α) = θ(α A_{ij}) [A.x_{ij}(α)]`.
    pub fn act_right_root(&self, s: &ScaledIdempotent, p: RootPos, alpha: FieldElement) -> ScaledIdempotent {
        let exponent = self.add_exponent(s.exponent, self.field.mul(alpha, s.matrix.get(p)));
        let mut matrix = s.matrix.clone();
        self.permute_right_root(&mut matrix, p, alpha);
        ScaledIdempotent { exponent, matrix }
    }

    /// `x_{il}(α) [A] = θ(α A_{il}) [x_{il}(α).A]`.
    pub fn act_left_root(&self, s: &ScaledIdempotent, p: RootPos, alpha: FieldElement) -> ScaledIdempotent {
        let exponent = self.add_exponent(s.exponent, self.field.mul(alpha, s.matrix.get(p)));
        let mut matrix = s.matrix.clone();
        self.permute_left_root(&mut matrix, p, alpha);
        ScaledIdempotent { exponent, matrix }
    }

    /// `[A] u`, applying the root factors of `u` one at a time.
    pub fn act_right_elem(&self, s: &ScaledIdempotent, u: &GroupElement) -> Result<ScaledIdempotent> {
        self.check_n(s.matrix.n)?;
        self.check_n(u.n)?;
        let mut out = s.clone();
        for (p, alpha) in self.factor(u) {
            if !alpha.is_zero() {
                out = self.act_right_root(&out, p, alpha);
            }
        }
        Ok(out)
    }

    /// `u [A]`, applying the root factors of `u` from the right end inwards.
    pub fn act_left_elem(&self, u: &GroupElement, s: &ScaledIdempotent) -> Result<ScaledIdempotent> {
        self.check_n(s.matrix.n)?;
        self.check_n(u.n)?;
        let mut out = s.clone();
        for (p, alpha) in self.factor(u).into_iter().rev() {
            if !alpha.is_zero() {
                out = self.act_left_root(&out, p, alpha);
            }
        }
        Ok(out)
    }

    /// `A.u = trunc(A u^{-t})`.
    pub fn right_image(&self, a: &NilMatrix, u: &GroupElement) -> NilMatrix {
        let f = &*self.field;
        let ui = self.inv(u);
        let mut out = self.zero_matrix();
        // (A u^{-t})_{kl} = sum_m A_{km} (u^{-1})_{lm}, with m <= l
        for p in positions(self.n) {
            let (k, l) = (p.i, p.j);
            let mut acc = a.get(p);
            for m in 1..l {
                let x = a.at(k, m);
                if !x.is_zero() {
                    acc = f.add(acc, f.mul(x, ui.at(l, m)));
                }
            }
            out.set(p, acc);
        }
        out
    }

    /// `u.A = trunc(u^{-t} A)`.
    pub fn left_image(&self, u: &GroupElement, a: &NilMatrix) -> NilMatrix {
        let f = &*self.field;
        let ui = self.inv(u);
        let mut out = self.zero_matrix();
        // (u^{-t} A)_{kl} = sum_m (u^{-1})_{mk} A_{ml}, with m >= k
        for p in positions(self.n) {
            let (k, l) = (p.i, p.j);
            let mut acc = a.get(p);
            for m in k + 1..=self.n {
                let x = a.at(m, l);
                if !x.is_zero() {
                    acc = f.add(acc, f.mul(ui.at(m, k), x));
                }
            }
            out.set(p, acc);
        }
        out
    }

    /// `Tr(Σ B_{kl} C_{kl})`, the exponent of `χ_B(C)`.
    fn pairing_exponent(&self, b: &NilMatrix, u: &GroupElement) -> u32 {
        let f = &*self.field;
        let mut acc = FieldElement::ZERO;
        for p in positions(self.n) {
            acc = f.add(acc, f.mul(b.get(p), u.get(p)));
        }
        f.theta_exponent(acc)
    }

    /// `[A] u = χ_{A.u}(u - 1) [A.u]`, evaluated directly.
    pub fn act_right_elem_closed(&self, s: &ScaledIdempotent, u: &GroupElement) -> Result<ScaledIdempotent> {
        self.check_n(s.matrix.n)?;
        self.check_n(u.n)?;
        let matrix = self.right_image(&s.matrix, u);
        let exponent = (s.exponent + self.pairing_exponent(&matrix, u)) % self.field.p();
        Ok(ScaledIdempotent { exponent, matrix })
    }

    /// `u [A] = χ_{u.A}(u - 1) [u.A]`, evaluated directly.
    pub fn act_left_elem_closed(&self, u: &GroupElement, s: &ScaledIdempotent) -> Result<ScaledIdempotent> {
        self.check_n(s.matrix.n)?;
        self.check_n(u.n)?;
        let matrix = self.left_image(u, &s.matrix);
        let exponent = (s.exponent + self.pairing_exponent(&matrix, u)) % self.field.p();
        Ok(ScaledIdempotent { exponent, matrix })
    }
}
