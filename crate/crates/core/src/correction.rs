//! Depth-graded correction terms.
//!
//! Two independent routes are implemented:
//!
//! * the bracket route: `Ca_{2p} = Σ_i c_i Σ_{|w| = i} Carr^w P(w)` over
//!   resonant words of depth `2p`, where `P(w)` is the `x∂x` coefficient of
//!   the left-nested bracket and `c_i = 1/i` is the projection factor;
//! * the composition oracle: `Σ_w Carr^w B_w(x)` with `B_w` the composed
//!   operator, read off at `x^{p+1} y^p`. No projection factor is involved.
//!
//! Both routes share only the mould values and the operator coefficients.
//!
//! The word-to-operator order is a parameter. `Forward` reads `B_w` as
//! `B_{n_1} ∘ ⋯ ∘ B_{n_r}` (the last letter acts first) and is the default.
//! `Reverse` reads it as `B_{n_r} ∘ ⋯ ∘ B_{n_1}`. With the `Carr` mould as
//! tabulated, only `Reverse` gives zero correction on fields that are
//! conjugate to `X_lin` (see `tests/linearizable.rs`). As `Carr` is
//! alternal, the two orders differ by the factor `(−1)^{r−1}` on words of
//! length `r`, i.e. by the sign of every even-length contribution.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::alphabet::Letter;
use crate::arith::{rat, GaussRat};
use crate::constraints::FieldSpec;
use crate::error::CorrectionError;
use crate::mould::carr_value;
use crate::operators::{op_apply, BracketCoeffs, HomOp, OpSet};
use crate::poly::{CoeffVar, Coefficient, SymPoly};

/// Per-length factor applied to the bracket sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Normalization {
    /// `1/i`, the factor of the Dynkin projection onto Lie elements.
    #[default]
    InverseLength,
    /// `1/i!`. Kept only to show that it disagrees with the oracle.
    InverseFactorial,
}

impl Normalization {
    pub fn factor(&self, len: usize) -> GaussRat {
        let den: i64 = match self {
            Normalization::InverseLength => len as i64,
            Normalization::InverseFactorial => (1..=len as i64).product(),
        };
        GaussRat::real(rat(1, den))
    }
}

/// Order in which the letters of a word are composed into `B_w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Composition {
    /// `B_{n_1} ∘ ⋯ ∘ B_{n_r}`.
    #[default]
    Forward,
    /// `B_{n_r} ∘ ⋯ ∘ B_{n_1}`.
    Reverse,
}

impl Composition {
    /// Mould key of a word given its weights in reading order.
    fn key(&self, weights: &[i64]) -> Vec<i64> {
        match self {
            Composition::Forward => weights.to_vec(),
            Composition::Reverse => weights.iter().rev().copied().collect(),
        }
    }
}

impl std::fmt::Display for Composition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Composition::Forward => "forward",
            Composition::Reverse => "reverse",
        })
    }
}

impl std::str::FromStr for Composition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "forward" => Ok(Composition::Forward),
            "reverse" => Ok(Composition::Reverse),
            _ => Err(format!(
                "unknown composition order {s:?} (expected forward or reverse)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorrectionOptions {
    /// Skip words of length ≥ 2 that contain a weight-0 letter.
    pub prune: bool,
    pub normalization: Normalization,
    /// Split the word search over the first letter with rayon.
    pub parallel: bool,
    pub composition: Composition,
}

impl Default for CorrectionOptions {
    fn default() -> Self {
        CorrectionOptions {
            prune: true,
            normalization: Normalization::default(),
            parallel: true,
            composition: Composition::default(),
        }
    }
}

/// The correction at one depth: `(xy)^p (Ca x∂x + Ca_y y∂y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrectionTerm<C> {
    pub depth: u32,
    /// `Σ_{|w| = i} Carr^w P(w)` by length `i`, before the projection factor.
    pub parts: BTreeMap<usize, C>,
    /// Same for the `y∂y` coefficient `Q(w)`.
    pub parts_y: BTreeMap<usize, C>,
    /// Normalized `x∂x` contributions grouped by the sorted list of the
    /// component degrees of the letters, e.g. `[2, 4]` for words mixing one
    /// letter of `X_2` and one of `X_4`.
    pub by_signature: BTreeMap<Vec<u32>, C>,
    /// `Ca`.
    pub total: C,
    /// `y∂y` coefficient; the conjugate of `Ca` for real fields.
    pub total_y: C,
    /// Number of words with a nonzero contribution.
    pub words: usize,
}

impl<C: Coefficient> CorrectionTerm<C> {
    pub fn part(&self, len: usize) -> C {
        self.parts.get(&len).cloned().unwrap_or_else(C::zero)
    }

    /// Normalized contribution of one component signature (order-free).
    pub fn signature(&self, degrees: &[u32]) -> C {
        let mut key = degrees.to_vec();
        key.sort_unstable();
        self.by_signature.get(&key).cloned().unwrap_or_else(C::zero)
    }
}

struct Acc<C> {
    parts: BTreeMap<usize, C>,
    parts_y: BTreeMap<usize, C>,
    by_signature: BTreeMap<Vec<u32>, C>,
    words: usize,
}

impl<C: Coefficient> Acc<C> {
    fn new() -> Self {
        Acc {
            parts: BTreeMap::new(),
            parts_y: BTreeMap::new(),
            by_signature: BTreeMap::new(),
            words: 0,
        }
    }

    fn merge(&mut self, other: Acc<C>) {
        for (k, v) in other.parts {
            add_into(&mut self.parts, k, &v);
        }
        for (k, v) in other.parts_y {
            add_into(&mut self.parts_y, k, &v);
        }
        for (k, v) in other.by_signature {
            add_into(&mut self.by_signature, k, &v);
        }
        self.words += other.words;
    }
}

fn add_into<K: Ord, C: Coefficient>(map: &mut BTreeMap<K, C>, k: K, v: &C) {
    match map.get_mut(&k) {
        Some(e) => e.add_assign(v),
        None => {
            map.insert(k, v.clone());
        }
    }
}

/// Largest `|weight| / depth` over admissible letters is 3, reached by
/// `(−1,2)` and `(2,−1)`; a prefix whose weight exceeds three times the
/// remaining depth cannot be completed to a resonant word.
fn can_close(weight: i64, remaining: i64) -> bool {
    weight.abs() <= 3 * remaining
}

struct BracketSearch<'a, C> {
    ops: &'a [&'a HomOp<C>],
    target: i64,
    prune: bool,
    composition: Composition,
}

impl<'a, C: Coefficient> BracketSearch<'a, C> {
    fn visit(
        &self,
        letters: &mut Vec<Letter>,
        weights: &mut Vec<i64>,
        br: &BracketCoeffs<C>,
        depth: i64,
        weight: i64,
        acc: &mut Acc<C>,
    ) {
        if depth == self.target {
            if weight == 0 {
                let v = carr_value(&self.composition.key(weights));
                if !v.is_zero() {
                    let len = letters.len();
                    let px = br.p.scale(&v);
                    add_into(&mut acc.parts, len, &px);
                    add_into(&mut acc.parts_y, len, &br.q.scale(&v));
                    let mut sig: Vec<u32> = letters.iter().map(Letter::component).collect();
                    sig.sort_unstable();
                    add_into(&mut acc.by_signature, sig, &px);
                    acc.words += 1;
                }
            }
            return;
        }
        let remaining = self.target - depth;
        if !can_close(weight, remaining) {
            return;
        }
        for op in self.ops {
            let l = op.letter;
            if l.depth() > remaining || (self.prune && l.weight() == 0) {
                continue;
            }
            let next = br.append(op);
            if next.is_zero() {
                continue;
            }
            letters.push(l);
            weights.push(l.weight());
            self.visit(
                letters,
                weights,
                &next,
                depth + l.depth(),
                weight + l.weight(),
                acc,
            );
            letters.pop();
            weights.pop();
        }
    }

    fn subtree(&self, first: &HomOp<C>) -> Acc<C> {
        let mut acc = Acc::new();
        let l = first.letter;
        if l.depth() > self.target || (self.prune && l.weight() == 0 && l.depth() != self.target) {
            return acc;
        }
        let br = BracketCoeffs::of_letter(first);
        self.visit(
            &mut vec![l],
            &mut vec![l.weight()],
            &br,
            l.depth(),
            l.weight(),
            &mut acc,
        );
        acc
    }
}

fn nonzero_ops<C: Coefficient>(ops: &OpSet<C>) -> Vec<&HomOp<C>> {
    ops.values().filter(|o| !o.is_zero()).collect()
}

/// Bracket-route correction at `depth` for an explicit operator set.
pub fn correction_with_ops<C: Coefficient>(
    ops: &OpSet<C>,
    depth: u32,
    opts: &CorrectionOptions,
) -> CorrectionTerm<C> {
    let live = nonzero_ops(ops);
    let search = BracketSearch {
        ops: &live,
        target: depth as i64,
        prune: opts.prune,
        composition: opts.composition,
    };
    let subtrees: Vec<Acc<C>> = if opts.parallel {
        live.par_iter().map(|op| search.subtree(op)).collect()
    } else {
        live.iter().map(|op| search.subtree(op)).collect()
    };
    let mut acc = Acc::new();
    for s in subtrees {
        acc.merge(s);
    }
    let norm = |len: usize, v: &C| v.scale(&opts.normalization.factor(len));
    let mut total = C::zero();
    let mut total_y = C::zero();
    for (len, v) in &acc.parts {
        total.add_assign(&norm(*len, v));
    }
    for (len, v) in &acc.parts_y {
        total_y.add_assign(&norm(*len, v));
    }
    let by_signature = acc
        .by_signature
        .iter()
        .map(|(sig, v)| (sig.clone(), norm(sig.len(), v)))
        .collect();
    CorrectionTerm {
        depth,
        parts: acc.parts,
        parts_y: acc.parts_y,
        by_signature,
        total,
        total_y,
        words: acc.words,
    }
}

fn check_depth(depth: u32) -> Result<(), CorrectionError> {
    if depth == 0 {
        Err(CorrectionError::ZeroDepth)
    } else {
        Ok(())
    }
}

/// Symbolic correction term over the spec's independent coordinates.
pub fn correction_term(
    spec: &FieldSpec,
    depth: u32,
) -> Result<CorrectionTerm<SymPoly>, CorrectionError> {
    correction_term_with(spec, depth, &CorrectionOptions::default())
}

pub fn correction_term_with(
    spec: &FieldSpec,
    depth: u32,
    opts: &CorrectionOptions,
) -> Result<CorrectionTerm<SymPoly>, CorrectionError> {
    check_depth(depth)?;
    Ok(correction_with_ops(&spec.operators(), depth, opts))
}

/// Exact numeric correction term of a fully assigned field.
pub fn correction_numeric(
    spec: &FieldSpec,
    depth: u32,
) -> Result<CorrectionTerm<GaussRat>, CorrectionError> {
    correction_numeric_with(spec, depth, &CorrectionOptions::default())
}

pub fn correction_numeric_with(
    spec: &FieldSpec,
    depth: u32,
    opts: &CorrectionOptions,
) -> Result<CorrectionTerm<GaussRat>, CorrectionError> {
    check_depth(depth)?;
    let ops = spec
        .numeric_operators()
        .ok_or_else(|| CorrectionError::NotNumeric("a component is symbolic".into()))?;
    Ok(correction_with_ops(&ops, depth, opts))
}

/// `Σ_w Carr^w B_w` applied to the seeds `x` and `y`, as maps from the
/// exponent pair of the resulting monomial to its coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleExpansion<C> {
    pub x_side: BTreeMap<(i64, i64), C>,
    pub y_side: BTreeMap<(i64, i64), C>,
}

struct OracleSearch<'a, C> {
    ops: &'a [&'a HomOp<C>],
    target: i64,
    composition: Composition,
}

struct OracleState<C> {
    sx: C,
    ex: (i64, i64),
    sy: C,
    ey: (i64, i64),
}

impl<'a, C: Coefficient> OracleSearch<'a, C> {
    /// Letters are pushed in the order the operators act; `applied` holds
    /// their weights in that order. Under `Forward` this is the word read
    /// right to left, under `Reverse` it is the word itself.
    fn visit(
        &self,
        applied: &mut Vec<i64>,
        st: &OracleState<C>,
        depth: i64,
        weight: i64,
        out: &mut OracleExpansion<C>,
    ) {
        if depth == self.target {
            if weight == 0 {
                // Reverse the application order back to reading order for
                // `Forward`; for `Reverse` they coincide.
                let key: Vec<i64> = match self.composition {
                    Composition::Forward => applied.iter().rev().copied().collect(),
                    Composition::Reverse => applied.clone(),
                };
                let v = carr_value(&key);
                if !v.is_zero() {
                    if !st.sx.is_zero() {
                        add_into(&mut out.x_side, st.ex, &st.sx.scale(&v));
                    }
                    if !st.sy.is_zero() {
                        add_into(&mut out.y_side, st.ey, &st.sy.scale(&v));
                    }
                }
            }
            return;
        }
        let remaining = self.target - depth;
        if !can_close(weight, remaining) {
            return;
        }
        for op in self.ops {
            let l = op.letter;
            if l.depth() > remaining {
                continue;
            }
            if let Some(next) = self.step(st, op) {
                applied.push(l.weight());
                self.visit(applied, &next, depth + l.depth(), weight + l.weight(), out);
                applied.pop();
            }
        }
    }

    fn step(&self, st: &OracleState<C>, op: &HomOp<C>) -> Option<OracleState<C>> {
        let (ax, ex) = op_apply(op, st.ex);
        let (ay, ey) = op_apply(op, st.ey);
        let sx = st.sx.mul(&ax);
        let sy = st.sy.mul(&ay);
        if sx.is_zero() && sy.is_zero() {
            return None;
        }
        Some(OracleState { sx, ex, sy, ey })
    }
}

/// Composition-oracle expansion at one depth, forward order.
pub fn oracle_expansion<C: Coefficient>(ops: &OpSet<C>, depth: u32) -> OracleExpansion<C> {
    oracle_expansion_with(ops, depth, Composition::Forward)
}

pub fn oracle_expansion_with<C: Coefficient>(
    ops: &OpSet<C>,
    depth: u32,
    composition: Composition,
) -> OracleExpansion<C> {
    let live = nonzero_ops(ops);
    let search = OracleSearch {
        ops: &live,
        target: depth as i64,
        composition,
    };
    let one = C::from_scalar(GaussRat::one());
    let seed = OracleState {
        sx: one.clone(),
        ex: (1, 0),
        sy: one,
        ey: (0, 1),
    };
    let parts: Vec<OracleExpansion<C>> = live
        .par_iter()
        .map(|op| {
            let mut out = OracleExpansion {
                x_side: BTreeMap::new(),
                y_side: BTreeMap::new(),
            };
            let l = op.letter;
            if l.depth() <= depth as i64 {
                if let Some(st) = search.step(&seed, op) {
                    search.visit(&mut vec![l.weight()], &st, l.depth(), l.weight(), &mut out);
                }
            }
            out
        })
        .collect();
    let mut out = OracleExpansion {
        x_side: BTreeMap::new(),
        y_side: BTreeMap::new(),
    };
    for part in parts {
        for (k, v) in part.x_side {
            add_into(&mut out.x_side, k, &v);
        }
        for (k, v) in part.y_side {
            add_into(&mut out.y_side, k, &v);
        }
    }
    out.x_side.retain(|_, v| !v.is_zero());
    out.y_side.retain(|_, v| !v.is_zero());
    out
}

/// Coefficient of `x^{p+1} y^p` in the oracle expansion (`2p = depth`);
/// 0 for odd depths.
pub fn oracle_coefficient<C: Coefficient>(exp: &OracleExpansion<C>, depth: u32) -> C {
    if depth % 2 == 1 {
        return C::zero();
    }
    let p = (depth / 2) as i64;
    exp.x_side.get(&(p + 1, p)).cloned().unwrap_or_else(C::zero)
}

/// `Ca` by the composition oracle, symbolic.
pub fn correction_oracle(spec: &FieldSpec, depth: u32) -> Result<SymPoly, CorrectionError> {
    correction_oracle_with(spec, depth, Composition::Forward)
}

pub fn correction_oracle_with(
    spec: &FieldSpec,
    depth: u32,
    composition: Composition,
) -> Result<SymPoly, CorrectionError> {
    check_depth(depth)?;
    Ok(oracle_coefficient(
        &oracle_expansion_with(&spec.operators(), depth, composition),
        depth,
    ))
}

/// `Ca` by the composition oracle for a fully assigned field.
pub fn correction_oracle_numeric(
    spec: &FieldSpec,
    depth: u32,
) -> Result<GaussRat, CorrectionError> {
    correction_oracle_numeric_with(spec, depth, Composition::Forward)
}

pub fn correction_oracle_numeric_with(
    spec: &FieldSpec,
    depth: u32,
    composition: Composition,
) -> Result<GaussRat, CorrectionError> {
    check_depth(depth)?;
    let ops = spec
        .numeric_operators()
        .ok_or_else(|| CorrectionError::NotNumeric("a component is symbolic".into()))?;
    Ok(oracle_coefficient(
        &oracle_expansion_with(&ops, depth, composition),
        depth,
    ))
}

/// Closed form of `Ca_{2(r−1)}` for fields whose components have degrees in
/// `r..=2r−1`:
/// `p[r−1,r−1] + i(Σ_{k=⌊(r+1)/2⌋+1}^{r} r(r+1)/(r−k+1)² |p[k−1,r−k]|² + r/(r+1) |p[−1,r]|²)`,
/// rewritten onto the spec's coordinates.
pub fn fundamental_lemma_value(r: u32, spec: &FieldSpec) -> Result<SymPoly, CorrectionError> {
    if r < 2 {
        return Err(CorrectionError::RankTooSmall(r));
    }
    let ri = r as i64;
    let mut inner = SymPoly::zero();
    for k in (r.div_ceil(2) + 1)..=r {
        let k = k as i64;
        let c = rat(ri * (ri + 1), (ri - k + 1) * (ri - k + 1));
        inner.add_assign(
            &SymPoly::abs_sq(CoeffVar::p((k - 1) as i32, (ri - k) as i32)).scale_rat(&c),
        );
    }
    inner.add_assign(&SymPoly::abs_sq(CoeffVar::p(-1, r as i32)).scale_rat(&rat(ri, ri + 1)));
    let mut formula = inner.scale(&GaussRat::i());
    formula.add_assign(&SymPoly::var(CoeffVar::p(r as i32 - 1, r as i32 - 1)));
    Ok(spec.reduce(&formula))
}

/// Correction at an odd depth; identically 0 because an odd-depth word has
/// odd weight.
pub fn odd_depth_term(spec: &FieldSpec, depth: u32) -> Result<SymPoly, CorrectionError> {
    if depth.is_multiple_of(2) {
        return Err(CorrectionError::OddDepth(depth));
    }
    Ok(correction_term(spec, depth)?.total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::{Chart, Component};

    fn sp(s: &str) -> SymPoly {
        s.parse().unwrap()
    }

    fn g(s: &str) -> GaussRat {
        s.parse().unwrap()
    }

    #[test]
    fn quadratic_depth_two() {
        let spec = FieldSpec::symbolic([2], true, Chart::Upper);
        let ct = correction_term(&spec, 2).unwrap();
        let expected = sp("(6*i)*p[1,0]*~p[1,0] + (2/3*i)*p[-1,2]*~p[-1,2]");
        assert_eq!(ct.total, expected);
        assert_eq!(correction_oracle(&spec, 2).unwrap(), expected);
        assert_eq!(ct.total_y, ct.total.conj());
    }

    #[test]
    fn cubic_depth_two_has_central_term() {
        let spec = FieldSpec::symbolic([2, 3], true, Chart::Upper);
        let ct = correction_term(&spec, 2).unwrap();
        let expected = sp("p[1,1] + (6*i)*p[1,0]*~p[1,0] + (2/3*i)*p[-1,2]*~p[-1,2]");
        assert_eq!(ct.total, expected);
        assert_eq!(ct.part(1), sp("p[1,1]"));
    }

    #[test]
    fn zero_field_has_zero_correction() {
        let spec = FieldSpec::new(true, Chart::Lower)
            .with_component(2, Component::Assigned(BTreeMap::new()))
            .with_component(3, Component::Assigned(BTreeMap::new()));
        for d in 1..=6 {
            assert!(correction_numeric(&spec, d).unwrap().total.is_zero());
            assert!(correction_oracle_numeric(&spec, d).unwrap().is_zero());
        }
    }

    #[test]
    fn numeric_matches_substituted_symbolic() {
        let vals: BTreeMap<CoeffVar, GaussRat> =
            [(CoeffVar::p(0, 1), g("2")), (CoeffVar::p(-1, 2), g("1+i"))].into();
        let num =
            FieldSpec::new(true, Chart::Lower).with_component(2, Component::Assigned(vals.clone()));
        let sym = FieldSpec::symbolic([2], true, Chart::Lower);
        for depth in [2, 4] {
            let s = correction_term(&sym, depth)
                .unwrap()
                .total
                .evaluate(&vals)
                .unwrap();
            assert_eq!(correction_numeric(&num, depth).unwrap().total, s);
            assert_eq!(correction_oracle_numeric(&num, depth).unwrap(), s);
        }
    }

    #[test]
    fn factorial_normalization_disagrees_with_oracle() {
        let spec = FieldSpec::symbolic([2], true, Chart::Lower);
        let opts = CorrectionOptions {
            normalization: Normalization::InverseFactorial,
            ..Default::default()
        };
        let fact = correction_term_with(&spec, 4, &opts).unwrap().total;
        let oracle = correction_oracle(&spec, 4).unwrap();
        assert_ne!(fact, oracle);
        assert_eq!(correction_term(&spec, 4).unwrap().total, oracle);
    }

    #[test]
    fn pruning_does_not_change_totals() {
        let spec = FieldSpec::symbolic([2, 3], true, Chart::Lower);
        let opts = CorrectionOptions {
            prune: false,
            parallel: false,
            ..Default::default()
        };
        for depth in [2, 4] {
            let a = correction_term(&spec, depth).unwrap();
            let b = correction_term_with(&spec, depth, &opts).unwrap();
            assert_eq!(a.total, b.total);
        }
    }

    #[test]
    fn odd_depths_vanish() {
        let spec = FieldSpec::symbolic(2..=5, true, Chart::Lower);
        for depth in [1, 3, 5] {
            assert!(odd_depth_term(&spec, depth).unwrap().is_zero());
        }
        assert!(odd_depth_term(&spec, 2).is_err());
    }

    #[test]
    fn fundamental_lemma_small_cases() {
        let spec = FieldSpec::symbolic([2, 3], true, Chart::Upper);
        assert_eq!(
            fundamental_lemma_value(2, &spec).unwrap(),
            sp("p[1,1] + (6*i)*p[1,0]*~p[1,0] + (2/3*i)*p[-1,2]*~p[-1,2]")
        );
        let only2 = FieldSpec::symbolic([2], true, Chart::Upper);
        assert_eq!(
            fundamental_lemma_value(2, &only2).unwrap(),
            sp("(6*i)*p[1,0]*~p[1,0] + (2/3*i)*p[-1,2]*~p[-1,2]")
        );
        let three = FieldSpec::symbolic([3], true, Chart::Upper);
        assert_eq!(
            fundamental_lemma_value(3, &three).unwrap(),
            sp("(12*i)*p[2,0]*~p[2,0] + (3/4*i)*p[-1,3]*~p[-1,3]")
        );
        assert!(fundamental_lemma_value(1, &three).is_err());
    }

    #[test]
    fn reverse_order_flips_even_lengths() {
        let spec = FieldSpec::symbolic([2, 3], true, Chart::Lower);
        let rev = CorrectionOptions {
            composition: Composition::Reverse,
            ..Default::default()
        };
        for depth in [2, 4] {
            let f = correction_term(&spec, depth).unwrap();
            let r = correction_term_with(&spec, depth, &rev).unwrap();
            for (len, v) in &f.parts {
                let expected = if len % 2 == 0 { v.neg() } else { v.clone() };
                assert_eq!(r.part(*len), expected, "length {len}");
            }
            assert_eq!(
                correction_oracle_with(&spec, depth, Composition::Reverse).unwrap(),
                r.total
            );
        }
    }

    #[test]
    fn composition_parses() {
        assert_eq!(
            "reverse".parse::<Composition>().unwrap(),
            Composition::Reverse
        );
        assert_eq!(Composition::Forward.to_string(), "forward");
        assert!("backward".parse::<Composition>().is_err());
    }
}
