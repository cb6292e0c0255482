//! Reality and Hamiltonian coefficient relations, independent coordinates,
//! and the field specification used by every computation.
//!
//! A real component of degree `r` is determined by the `r + 1` coefficients
//! `p[a,b]` (`a + b = r − 1`, `b ≥ 0`), with `q[a,b] = ~p[b,a]`. A real
//! Hamiltonian component further satisfies
//! `p[a,b] = −((b+1)/(a+1)) ~p[b,a]` for `a ≠ b`, leaves the edge `p[−1,r]`
//! free, and forces the central `p[c,c]` (odd `r`) to be purely imaginary.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::alphabet::{alphabet_of_component, Letter};
use crate::arith::{rat, GaussRat};
use crate::error::ConstraintError;
use crate::operators::{HomOp, OpSet};
use crate::poly::{CoeffVar, SymPoly, VarKind};

/// Which half of each mirrored pair `p[a,b]`, `p[b,a]` is kept as the
/// independent coordinate of a Hamiltonian component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub enum Chart {
    /// Keep `p[a,b]` with `a < b`; eliminates e.g. `p[1,0] = −(1/2)~p[0,1]`.
    #[default]
    Lower,
    /// Keep `p[a,b]` with `a > b`; eliminates e.g. `p[0,1] = −2~p[1,0]`.
    Upper,
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chart::Lower => "lower",
            Chart::Upper => "upper",
        })
    }
}

impl FromStr for Chart {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "lower" => Ok(Chart::Lower),
            "upper" => Ok(Chart::Upper),
            other => Err(format!(
                "unknown chart {:?} (expected lower or upper)",
                other
            )),
        }
    }
}

fn check_degree(r: u32) -> Result<(), ConstraintError> {
    if r < 2 {
        Err(ConstraintError::ComponentTooSmall(r))
    } else {
        Ok(())
    }
}

/// `q[a,b] ↦ ~p[b,a]` for every `q` coefficient of component `r` (the edge
/// `q[r,−1]` maps to `~p[−1,r]`).
pub fn reality_relations(r: u32) -> Result<BTreeMap<CoeffVar, SymPoly>, ConstraintError> {
    check_degree(r)?;
    let mut out = BTreeMap::new();
    for l in alphabet_of_component(r).expect("degree checked") {
        if l.n1 >= 0 {
            out.insert(
                CoeffVar::q(l.n1, l.n2),
                SymPoly::var(CoeffVar::p(l.n2, l.n1).conjugate()),
            );
        }
    }
    Ok(out)
}

/// The central coefficient `p[c,c]` of an odd component.
pub fn central_variable(r: u32) -> Option<CoeffVar> {
    crate::alphabet::resonant_letter_of(r).map(|l| CoeffVar::p(l.n1, l.n2))
}

fn hamiltonian_independent(a: i32, b: i32, chart: Chart) -> bool {
    a == -1
        || a == b
        || match chart {
            Chart::Lower => a < b,
            Chart::Upper => a > b,
        }
}

/// Rewrites of the dependent `p` coefficients of a Hamiltonian component of
/// degree `r` onto the chart's independent ones. The central relation
/// `~p[c,c] = −p[c,c]` is handled by [`FieldSpec::reduce`].
pub fn hamiltonian_relations(
    r: u32,
    chart: Chart,
) -> Result<BTreeMap<CoeffVar, SymPoly>, ConstraintError> {
    check_degree(r)?;
    let mut out = BTreeMap::new();
    let r = r as i32;
    for a in 0..r {
        let b = r - 1 - a;
        if !hamiltonian_independent(a, b, chart) {
            let factor = GaussRat::real(-rat((b + 1) as i64, (a + 1) as i64));
            out.insert(
                CoeffVar::p(a, b),
                SymPoly::var(CoeffVar::p(b, a).conjugate()).scale(&factor),
            );
        }
    }
    Ok(out)
}

/// Independent `p` coefficients of one component, in canonical order.
pub fn component_coordinates(r: u32, hamiltonian: bool, chart: Chart) -> Vec<CoeffVar> {
    let r = r as i32;
    let mut out: Vec<CoeffVar> = (-1..r)
        .map(|a| (a, r - 1 - a))
        .filter(|&(a, b)| !hamiltonian || hamiltonian_independent(a, b, chart))
        .map(|(a, b)| CoeffVar::p(a, b))
        .collect();
    out.sort();
    out
}

/// Independent coordinates of a degree-`d` field (components 2..=d). The
/// real case has `(d−1)(d+4)/2` entries.
pub fn independent_set(
    d: u32,
    hamiltonian: bool,
    chart: Chart,
) -> Result<Vec<CoeffVar>, ConstraintError> {
    check_degree(d)?;
    Ok((2..=d)
        .flat_map(|r| component_coordinates(r, hamiltonian, chart))
        .collect())
}

/// `N(d) = (d − 1)(d + 4)/2`.
pub fn real_coefficient_count(d: u32) -> usize {
    ((d - 1) * (d + 4) / 2) as usize
}

/// Coefficients of one homogeneous component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component {
    /// Every independent coefficient is an indeterminate.
    Symbolic,
    /// Exact values for independent coefficients; missing ones are 0.
    Assigned(BTreeMap<CoeffVar, GaussRat>),
}

/// A real planar field `X_lin + Σ_r X_r`, possibly Hamiltonian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub hamiltonian: bool,
    pub chart: Chart,
    pub components: BTreeMap<u32, Component>,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::new(true, Chart::Lower)
    }
}

impl FieldSpec {
    pub fn new(hamiltonian: bool, chart: Chart) -> Self {
        FieldSpec {
            hamiltonian,
            chart,
            components: BTreeMap::new(),
        }
    }

    /// Fully symbolic field with the given component degrees.
    pub fn symbolic<I: IntoIterator<Item = u32>>(
        degrees: I,
        hamiltonian: bool,
        chart: Chart,
    ) -> Self {
        let mut s = FieldSpec::new(hamiltonian, chart);
        for r in degrees {
            s.components.insert(r, Component::Symbolic);
        }
        s
    }

    pub fn with_component(mut self, r: u32, c: Component) -> Self {
        self.components.insert(r, c);
        self
    }

    /// Highest component degree present (0 for the bare linear field).
    pub fn degree(&self) -> u32 {
        self.components.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_numeric(&self) -> bool {
        self.components
            .values()
            .all(|c| matches!(c, Component::Assigned(_)))
    }

    /// Whether component `r` is present and not identically zero.
    pub fn component_nonzero(&self, r: u32) -> bool {
        match self.components.get(&r) {
            None => false,
            Some(Component::Symbolic) => true,
            Some(Component::Assigned(m)) => m.values().any(|z| !z.is_zero()),
        }
    }

    /// Degrees of the components that are not identically zero.
    pub fn support(&self) -> Vec<u32> {
        self.components
            .keys()
            .copied()
            .filter(|r| self.component_nonzero(*r))
            .collect()
    }

    /// True when every component is zero.
    pub fn is_trivial(&self) -> bool {
        self.support().is_empty()
    }

    fn is_independent(&self, a: i32, b: i32) -> bool {
        b >= 0 && (!self.hamiltonian || hamiltonian_independent(a, b, self.chart))
    }

    /// Independent coordinates of the symbolic components.
    pub fn coordinates(&self) -> Vec<CoeffVar> {
        let mut out = Vec::new();
        for (r, c) in &self.components {
            if matches!(c, Component::Symbolic) {
                out.extend(component_coordinates(*r, self.hamiltonian, self.chart));
            }
        }
        out
    }

    fn base(&self, r: u32, v: CoeffVar) -> SymPoly {
        match self.components.get(&r) {
            None => SymPoly::zero(),
            Some(Component::Symbolic) => SymPoly::var(v),
            Some(Component::Assigned(m)) => m
                .get(&v)
                .map(|z| SymPoly::constant(z.clone()))
                .unwrap_or_default(),
        }
    }

    fn p_value(&self, a: i32, b: i32, conj: bool) -> SymPoly {
        if b == -1 || a < -1 || a + b < 1 {
            return SymPoly::zero();
        }
        let r = (a + b + 1) as u32;
        if !self.components.contains_key(&r) {
            return SymPoly::zero();
        }
        let v = CoeffVar::p(a, b);
        if self.hamiltonian && a == b {
            let base = self.base(r, v);
            return if conj { base.neg() } else { base };
        }
        if self.is_independent(a, b) {
            let base = self.base(r, v);
            return if conj { base.conj() } else { base };
        }
        let factor = GaussRat::real(-rat((b + 1) as i64, (a + 1) as i64));
        self.p_value(b, a, !conj).scale(&factor)
    }

    /// Any coefficient (`p`, `q`, plain or conjugated) expressed over the
    /// independent coordinates, or as a number for assigned components.
    pub fn value(&self, v: &CoeffVar) -> SymPoly {
        match v.kind {
            VarKind::P => self.p_value(v.a, v.b, v.conj),
            VarKind::Q => {
                if v.a == -1 {
                    SymPoly::zero()
                } else {
                    self.p_value(v.b, v.a, !v.conj)
                }
            }
        }
    }

    /// Rewrites a polynomial onto the independent coordinates of this spec.
    /// Variables of absent components become 0.
    pub fn reduce(&self, poly: &SymPoly) -> SymPoly {
        poly.substitute_with(|v| Some(self.value(v)))
    }

    /// Operators of every component with constrained coefficients.
    pub fn operators(&self) -> OpSet<SymPoly> {
        let mut out = BTreeMap::new();
        for &r in self.components.keys() {
            for l in alphabet_of_component(r).expect("components are validated to be >= 2") {
                out.insert(l, self.operator(l));
            }
        }
        out
    }

    fn operator(&self, l: Letter) -> HomOp<SymPoly> {
        HomOp {
            letter: l,
            p: self.value(&CoeffVar::p(l.n1, l.n2)),
            q: self.value(&CoeffVar::q(l.n1, l.n2)),
        }
    }

    /// Operators with exact numeric coefficients; `None` if any component
    /// is symbolic.
    pub fn numeric_operators(&self) -> Option<OpSet<GaussRat>> {
        if !self.is_numeric() {
            return None;
        }
        let ops = self.operators();
        let mut out = BTreeMap::new();
        for (l, op) in ops {
            out.insert(
                l,
                HomOp {
                    letter: l,
                    p: op.p.as_constant()?,
                    q: op.q.as_constant()?,
                },
            );
        }
        Some(out)
    }

    /// Numeric value of any coefficient of an assigned field.
    pub fn numeric_value(&self, v: &CoeffVar) -> Option<GaussRat> {
        self.value(v).as_constant()
    }

    /// Applies the `T_λ` action `p[a,b] ↦ λ^{a−b} p[a,b]` to assigned
    /// components. `λ` must have modulus 1 for the result to stay real.
    pub fn rescaled(&self, lambda: &GaussRat) -> Result<FieldSpec, crate::error::ArithError> {
        let mut out = self.clone();
        for c in out.components.values_mut() {
            if let Component::Assigned(m) = c {
                for (v, z) in m.iter_mut() {
                    *z = &*z * &lambda.pow(v.a - v.b)?;
                }
            }
        }
        Ok(out)
    }
}

/// Checks a field specification and returns its canonical form: zero
/// assignments dropped, only independent coefficients assigned, central
/// coefficients of odd Hamiltonian components purely imaginary.
pub fn validate_assignment(spec: &FieldSpec) -> Result<FieldSpec, ConstraintError> {
    let mut out = spec.clone();
    for (&r, c) in out.components.iter_mut() {
        check_degree(r)?;
        if let Component::Assigned(m) = c {
            for (v, z) in m.iter() {
                let belongs = v.kind == VarKind::P
                    && !v.conj
                    && v.degree() == r as i32
                    && v.a >= -1
                    && v.b >= -1;
                if !belongs || v.b == -1 {
                    if v.kind == VarKind::Q && !v.conj && v.degree() == r as i32 {
                        return Err(ConstraintError::DependentAssignment {
                            var: v.to_string(),
                            r,
                        });
                    }
                    return Err(ConstraintError::UnknownVariable {
                        var: v.to_string(),
                        r,
                    });
                }
                if !spec.is_independent(v.a, v.b) {
                    return Err(ConstraintError::DependentAssignment {
                        var: v.to_string(),
                        r,
                    });
                }
                if spec.hamiltonian && v.a == v.b && !z.is_imaginary() {
                    return Err(ConstraintError::RealityViolation {
                        var: v.to_string(),
                        value: z.to_string(),
                    });
                }
            }
            m.retain(|_, z| !z.is_zero());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Word;
    use crate::operators::bracket_coeffs;

    fn sp(s: &str) -> SymPoly {
        s.parse().unwrap()
    }

    fn g(s: &str) -> GaussRat {
        s.parse().unwrap()
    }

    #[test]
    fn reality_examples() {
        let r3 = reality_relations(3).unwrap();
        assert_eq!(r3[&CoeffVar::q(3, -1)], sp("~p[-1,3]"));
        let r2 = reality_relations(2).unwrap();
        assert_eq!(r2[&CoeffVar::q(0, 1)], sp("~p[1,0]"));
        let once = sp("q[0,1]*q[2,-1] + ~q[1,0]").substitute(&r2).unwrap();
        assert_eq!(once.substitute(&r2).unwrap(), once);
        assert_eq!(once, sp("~p[1,0]*~p[-1,2] + p[0,1]"));
    }

    #[test]
    fn hamiltonian_examples() {
        let h2 = hamiltonian_relations(2, Chart::Lower).unwrap();
        assert_eq!(h2[&CoeffVar::p(1, 0)], sp("(-1/2)*~p[0,1]"));
        let h3 = hamiltonian_relations(3, Chart::Lower).unwrap();
        assert_eq!(h3[&CoeffVar::p(2, 0)], sp("(-1/3)*~p[0,2]"));
        assert_eq!(h3.len(), 1);
        let spec = FieldSpec::symbolic([3], true, Chart::Lower);
        // p + ~p = 2 Re(p) vanishes for the central coefficient
        assert!(spec.reduce(&sp("p[1,1] + ~p[1,1]")).is_zero());
        let up = hamiltonian_relations(2, Chart::Upper).unwrap();
        assert_eq!(up[&CoeffVar::p(0, 1)], sp("(-2)*~p[1,0]"));
    }

    #[test]
    fn independent_sets() {
        let d2 = independent_set(2, false, Chart::Lower).unwrap();
        assert_eq!(
            d2,
            vec![CoeffVar::p(-1, 2), CoeffVar::p(0, 1), CoeffVar::p(1, 0)]
        );
        assert_eq!(independent_set(3, false, Chart::Lower).unwrap().len(), 7);
        let h2 = independent_set(2, true, Chart::Lower).unwrap();
        assert_eq!(h2, vec![CoeffVar::p(-1, 2), CoeffVar::p(0, 1)]);
        for d in 2..=8 {
            assert_eq!(
                independent_set(d, false, Chart::Lower).unwrap().len(),
                real_coefficient_count(d)
            );
        }
    }

    #[test]
    fn validation() {
        let assign = |pairs: &[(CoeffVar, &str)]| {
            let m: BTreeMap<CoeffVar, GaussRat> = pairs.iter().map(|(v, z)| (*v, g(z))).collect();
            FieldSpec::new(true, Chart::Lower).with_component(3, Component::Assigned(m))
        };
        assert!(matches!(
            validate_assignment(&assign(&[(CoeffVar::p(1, 1), "2+5*i")])),
            Err(ConstraintError::RealityViolation { .. })
        ));
        assert!(validate_assignment(&assign(&[(CoeffVar::p(1, 1), "5*i")])).is_ok());
        let q = FieldSpec::new(true, Chart::Lower).with_component(
            2,
            Component::Assigned([(CoeffVar::q(2, -1), g("1"))].into()),
        );
        assert!(matches!(
            validate_assignment(&q),
            Err(ConstraintError::DependentAssignment { .. })
        ));
        assert!(matches!(
            validate_assignment(&assign(&[(CoeffVar::p(2, 0), "1")])),
            Err(ConstraintError::DependentAssignment { .. })
        ));
        assert!(matches!(
            validate_assignment(&assign(&[(CoeffVar::p(1, 0), "1")])),
            Err(ConstraintError::UnknownVariable { .. })
        ));
        let zero = validate_assignment(&assign(&[(CoeffVar::p(0, 2), "0")])).unwrap();
        assert_eq!(zero.components[&3], Component::Assigned(BTreeMap::new()));
    }

    #[test]
    fn normalized_components_satisfy_relations() {
        for chart in [Chart::Lower, Chart::Upper] {
            let spec = FieldSpec::symbolic(2..=6, true, chart);
            for r in 2..=6u32 {
                for (v, img) in reality_relations(r).unwrap() {
                    assert_eq!(spec.value(&v), spec.reduce(&img));
                }
                let ri = r as i32;
                for a in 0..ri {
                    let b = ri - 1 - a;
                    let lhs = spec.value(&CoeffVar::p(a, b));
                    let rhs = spec
                        .value(&CoeffVar::p(b, a).conjugate())
                        .scale(&GaussRat::real(-rat((b + 1) as i64, (a + 1) as i64)));
                    assert_eq!(lhs, rhs, "r={} a={}", r, a);
                }
            }
        }
    }

    #[test]
    fn fundamental_lemma_brackets() {
        for r in 2..=5u32 {
            let spec = FieldSpec::symbolic([r], true, Chart::Upper);
            let ops = spec.operators();
            let ri = r as i32;
            for k in (r.div_ceil(2) + 1)..=r {
                let k = k as i32;
                let (a, b) = (k - 1, ri - k);
                let br = bracket_coeffs(&Word(vec![Letter::new(a, b), Letter::new(b, a)]), &ops)
                    .unwrap();
                let c = rat(
                    (ri * (ri + 1) * (2 * k - ri - 1)) as i64,
                    ((ri - k + 1) * (ri - k + 1)) as i64,
                );
                let expected = SymPoly::abs_sq(CoeffVar::p(a, b)).scale_rat(&c);
                assert_eq!(br.p, expected, "r={} k={}", r, k);
                assert_eq!(br.q, expected.neg());
            }
            let edge = bracket_coeffs(&Word(vec![Letter::new(-1, ri), Letter::new(ri, -1)]), &ops)
                .unwrap();
            let expected =
                SymPoly::abs_sq(CoeffVar::p(-1, ri)).scale(&GaussRat::from_int(-(r as i64)));
            assert_eq!(edge.p, expected);
            assert_eq!(edge.q, expected.neg());
        }
    }
}
