//! Homogeneous operators `B_n = x^{n1} y^{n2}(p_n x∂x + q_n y∂y)`, the
//! left-nested bracket recursion, and direct composition on monomials.

use std::collections::BTreeMap;

use crate::alphabet::{alphabet_of_component, Letter, Word};
use crate::error::{AlphabetError, OperatorError};
use crate::poly::{CoeffVar, Coefficient, SymPoly};

/// A homogeneous operator with coefficients in `C`.
///
/// The edge operator `(−1, r)` is `p y^r ∂x` (so `q = 0`) and `(r, −1)` is
/// `q x^r ∂y` (so `p = 0`); both fit the common shape.
#[derive(Clone, Debug, PartialEq)]
pub struct HomOp<C> {
    pub letter: Letter,
    pub p: C,
    pub q: C,
}

impl<C: Coefficient> HomOp<C> {
    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

pub type OpSet<C> = BTreeMap<Letter, HomOp<C>>;

/// How symbolic operator coefficients are named.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorMode {
    /// `p = p[a,b]`, `q = q[a,b]`, unrelated.
    Free,
    /// `q[a,b] = ~p[b,a]`: the field is real.
    Real,
}

/// One operator per letter of component `r` with symbolic coefficients.
/// Hamiltonian relations are applied by [`crate::constraints::FieldSpec`].
pub fn make_operators(r: u32, mode: OperatorMode) -> Result<OpSet<SymPoly>, AlphabetError> {
    let mut out = BTreeMap::new();
    for l in alphabet_of_component(r)? {
        let p = if l.n2 == -1 {
            SymPoly::zero()
        } else {
            SymPoly::var(CoeffVar::p(l.n1, l.n2))
        };
        let q = if l.n1 == -1 {
            SymPoly::zero()
        } else {
            match mode {
                OperatorMode::Free => SymPoly::var(CoeffVar::q(l.n1, l.n2)),
                OperatorMode::Real => SymPoly::var(CoeffVar::p(l.n2, l.n1).conjugate()),
            }
        };
        out.insert(l, HomOp { letter: l, p, q });
    }
    Ok(out)
}

/// Coefficients of the left-nested bracket `[[..[B_{n1},B_{n2}],..],B_{nr}]`,
/// which is again of the form `x^{N1} y^{N2}(P x∂x + Q y∂y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketCoeffs<C> {
    pub p: C,
    pub q: C,
    /// `(|n|¹, |n|²)`.
    pub total: Letter,
}

impl<C: Coefficient> BracketCoeffs<C> {
    pub fn of_letter(op: &HomOp<C>) -> Self {
        BracketCoeffs {
            p: op.p.clone(),
            q: op.q.clone(),
            total: op.letter,
        }
    }

    /// Brackets on the right with one more operator:
    /// `[x^{N}(P x∂x + Q y∂y), x^{m}(p x∂x + q y∂y)]`.
    pub fn append(&self, op: &HomOp<C>) -> Self {
        let m = op.letter;
        let (n1, n2) = (self.total.n1 as i64, self.total.n2 as i64);
        let (m1, m2) = (m.n1 as i64, m.n2 as i64);
        let pp = self.p.mul(&op.p);
        let qp = self.q.mul(&op.p);
        let pq = self.p.mul(&op.q);
        let qq = self.q.mul(&op.q);
        let mut p = pp.scale_int(m1 - n1);
        p.add_assign(&qp.scale_int(m2));
        p.add_assign(&pq.scale_int(-n2));
        let mut q = qq.scale_int(m2 - n2);
        q.add_assign(&pq.scale_int(m1));
        q.add_assign(&qp.scale_int(-n1));
        BracketCoeffs {
            p,
            q,
            total: self.total.add(&m),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

fn lookup<'a, C>(ops: &'a OpSet<C>, l: &Letter) -> Result<&'a HomOp<C>, OperatorError> {
    ops.get(l)
        .ok_or_else(|| OperatorError::UnknownLetter(l.to_string()))
}

/// Left-nested bracket coefficients of a nonempty word.
pub fn bracket_coeffs<C: Coefficient>(
    w: &Word,
    ops: &OpSet<C>,
) -> Result<BracketCoeffs<C>, OperatorError> {
    let (first, rest) = w.letters().split_first().ok_or(OperatorError::EmptyWord)?;
    let mut acc = BracketCoeffs::of_letter(lookup(ops, first)?);
    for l in rest {
        acc = acc.append(lookup(ops, l)?);
    }
    Ok(acc)
}

/// `B_n(x^l y^k) = (l p + k q) x^{n1+l} y^{n2+k}`.
pub fn op_apply<C: Coefficient>(op: &HomOp<C>, exps: (i64, i64)) -> (C, (i64, i64)) {
    let (l, k) = exps;
    let mut s = op.p.scale_int(l);
    s.add_assign(&op.q.scale_int(k));
    (s, (op.letter.n1 as i64 + l, op.letter.n2 as i64 + k))
}

/// `B_w = B_{n1} ∘ … ∘ B_{nr}` applied to `x^l y^k`: the rightmost operator
/// acts first.
pub fn compose_apply<C: Coefficient>(
    w: &Word,
    ops: &OpSet<C>,
    seed: (i64, i64),
) -> Result<(C, (i64, i64)), OperatorError> {
    let mut scalar = C::from_scalar(crate::arith::GaussRat::one());
    let mut exps = seed;
    for l in w.letters().iter().rev() {
        let (s, e) = op_apply(lookup(ops, l)?, exps);
        if !scalar.is_zero() {
            scalar = scalar.mul(&s);
        }
        exps = e;
    }
    Ok((scalar, exps))
}
