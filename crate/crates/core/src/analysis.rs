//! Isochronicity checks and the structural nonisochronicity criteria.
//!
//! A real center is isochronous exactly when it is linearizable, i.e. when
//! every correction term vanishes. `check_isochronous` evaluates the even
//! depths in order and stops at the first nonzero one. The theorem
//! predicates only test stated hypotheses; a predicate that does not apply
//! means "no guarantee", never "isochronous".

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{rat, GaussRat};
use crate::constraints::{
    central_variable, component_coordinates, validate_assignment, Chart, Component, FieldSpec,
};
use crate::correction::{correction_numeric_with, Composition, CorrectionOptions};
use crate::error::{CorrectionError, Error};
use crate::poly::CoeffVar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `Ca_depth` is the first nonzero correction term.
    Nonisochronous { depth: u32, witness: GaussRat },
    /// Every even depth up to the bound vanishes.
    UndeterminedUpTo(u32),
    /// All components are zero.
    LinearizableTrivially,
}

impl Verdict {
    pub fn is_nonisochronous(&self) -> bool {
        matches!(self, Verdict::Nonisochronous { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Nonisochronous { depth, witness } => {
                write!(f, "nonisochronous at depth {depth}: Ca_{depth} = {witness}")
            }
            Verdict::UndeterminedUpTo(d) => write!(f, "undetermined up to depth {d}"),
            Verdict::LinearizableTrivially => write!(f, "linearizable (trivial perturbation)"),
        }
    }
}

/// Verdict plus the evaluated correction terms, in depth order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub table: Vec<(u32, GaussRat)>,
}

/// Decides nonisochronicity up to `max_depth` for a fully numeric field,
/// composing words in the default order.
pub fn check_isochronous(spec: &FieldSpec, max_depth: u32) -> Result<CheckReport, Error> {
    check_isochronous_with(spec, max_depth, Composition::default())
}

pub fn check_isochronous_with(
    spec: &FieldSpec,
    max_depth: u32,
    composition: Composition,
) -> Result<CheckReport, Error> {
    if max_depth < 2 {
        return Err(CorrectionError::DepthTooSmall(max_depth).into());
    }
    if !spec.is_numeric() {
        return Err(
            CorrectionError::NotNumeric("check needs every component assigned".into()).into(),
        );
    }
    if spec.is_trivial() {
        return Ok(CheckReport {
            verdict: Verdict::LinearizableTrivially,
            table: Vec::new(),
        });
    }
    let mut table = Vec::new();
    for depth in (2..=max_depth).step_by(2) {
        let opts = CorrectionOptions {
            composition,
            ..Default::default()
        };
        let ca = correction_numeric_with(spec, depth, &opts)?.total;
        table.push((depth, ca.clone()));
        if !ca.is_zero() {
            return Ok(CheckReport {
                verdict: Verdict::Nonisochronous { depth, witness: ca },
                table,
            });
        }
    }
    Ok(CheckReport {
        verdict: Verdict::UndeterminedUpTo(max_depth),
        table,
    })
}

/// Hypothesis classes of the nonisochronicity criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremCondition {
    /// Even degree `2n`, some `r < n−1` with `p[i,i] = 0` for `i < r` and
    /// `Im p[r,r] > 0`.
    T1a,
    /// Even degree `2n` with `p[i,i] = 0` for `i = 1..n−1`.
    T1b,
    /// Support in `k..=2l`.
    T2 { k: u32, l: u32 },
    /// Support in `k..=2l` plus the blocks `c_n..=2(c_n − 1)`, `n ≤ m`.
    T3 { k: u32, l: u32, m: u32 },
    /// Support in `k..=2l+1` plus `r..=r+n`, `r ≥ 2l+2`, `Im p[l,l] > 0`.
    T4i { k: u32, l: u32, r: u32, n: u32 },
    /// Support in `k..=2l`, `4l−1` and `r..=r+n`, `X_{2l} ≠ 0`, `r ≥ 4l`,
    /// `Im p[2l−1,2l−1] > 0`.
    T4ii { k: u32, l: u32, r: u32, n: u32 },
    /// Only even-degree components.
    Weak,
}

/// `c_1 = 4l`, `c_n = 4(c_{n−1} − 1)`.
pub fn c_sequence(l: u32, m: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(m as usize);
    let mut c = 4 * l as u64;
    for _ in 0..m {
        out.push(c);
        c = 4 * (c - 1);
    }
    out
}

impl TheoremCondition {
    /// Checks the parameter constraints `k ≥ 2`, `l ≤ k−1` (and `l ≥ 1`).
    pub fn validate(&self) -> Result<(), Error> {
        let kl = |k: u32, l: u32| {
            if k < 2 {
                Err(Error::Condition(format!("k must be at least 2, got {k}")))
            } else if l == 0 || l > k - 1 {
                Err(Error::Condition(format!(
                    "l must lie in 1..={}, got {l}",
                    k - 1
                )))
            } else {
                Ok(())
            }
        };
        match *self {
            TheoremCondition::T2 { k, l } => kl(k, l),
            TheoremCondition::T3 { k, l, m } => {
                kl(k, l)?;
                // c_n is increasing as soon as c_1 = 4l ≥ 4; guard anyway.
                let c = c_sequence(l, m);
                if c.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::Condition("c_n must be strictly increasing".into()));
                }
                Ok(())
            }
            TheoremCondition::T4i { k, l, r, .. } => {
                kl(k, l)?;
                if r < 2 * l + 2 {
                    return Err(Error::Condition(format!(
                        "r must be at least {}, got {r}",
                        2 * l + 2
                    )));
                }
                Ok(())
            }
            TheoremCondition::T4ii { k, l, r, .. } => {
                kl(k, l)?;
                if r < 4 * l {
                    return Err(Error::Condition(format!(
                        "r must be at least {}, got {r}",
                        4 * l
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for TheoremCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremCondition::T1a => write!(f, "1a"),
            TheoremCondition::T1b => write!(f, "1b"),
            TheoremCondition::T2 { k, l } => write!(f, "2:{k},{l}"),
            TheoremCondition::T3 { k, l, m } => write!(f, "3:{k},{l},{m}"),
            TheoremCondition::T4i { k, l, r, n } => write!(f, "4i:{k},{l},{r},{n}"),
            TheoremCondition::T4ii { k, l, r, n } => write!(f, "4ii:{k},{l},{r},{n}"),
            TheoremCondition::Weak => write!(f, "weak"),
        }
    }
}

impl FromStr for TheoremCondition {
    type Err = Error;

    /// Parses the `Display` form, e.g. `2:3,2` or `weak`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let (id, args) = match s.split_once(':') {
            Some((id, rest)) => (id.trim(), Some(rest)),
            None => (s.trim(), None),
        };
        let nums: Vec<u32> = match args {
            None => Vec::new(),
            Some(a) => a
                .split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|e| Error::Condition(format!("{s:?}: {e}")))?,
        };
        let want = |n: usize| {
            if nums.len() == n {
                Ok(())
            } else {
                Err(Error::Condition(format!(
                    "{id} takes {n} parameters, got {}",
                    nums.len()
                )))
            }
        };
        let cond = match id {
            "1a" => want(0).map(|_| TheoremCondition::T1a),
            "1b" => want(0).map(|_| TheoremCondition::T1b),
            "weak" => want(0).map(|_| TheoremCondition::Weak),
            "2" => want(2).map(|_| TheoremCondition::T2 {
                k: nums[0],
                l: nums[1],
            }),
            "3" => want(3).map(|_| TheoremCondition::T3 {
                k: nums[0],
                l: nums[1],
                m: nums[2],
            }),
            "4i" => want(4).map(|_| TheoremCondition::T4i {
                k: nums[0],
                l: nums[1],
                r: nums[2],
                n: nums[3],
            }),
            "4ii" => want(4).map(|_| TheoremCondition::T4ii {
                k: nums[0],
                l: nums[1],
                r: nums[2],
                n: nums[3],
            }),
            _ => Err(Error::Condition(format!("unknown theorem id {id:?}"))),
        }?;
        cond.validate()?;
        Ok(cond)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Applicability {
    /// True when the hypotheses hold, so nonisochronicity is guaranteed.
    pub applies: bool,
    pub explanation: String,
}

fn verdict(applies: bool, explanation: impl Into<String>) -> Applicability {
    Applicability {
        applies,
        explanation: explanation.into(),
    }
}

/// Sign of `Im p[i,i]`, or `None` when the value is symbolic.
fn central_im(spec: &FieldSpec, i: u32) -> Option<std::cmp::Ordering> {
    let v = spec.numeric_value(&CoeffVar::p(i as i32, i as i32))?;
    Some(v.im().cmp(&rat(0, 1)))
}

fn central_zero(spec: &FieldSpec, i: u32) -> Option<bool> {
    Some(
        spec.numeric_value(&CoeffVar::p(i as i32, i as i32))?
            .is_zero(),
    )
}

fn outside<'a>(support: &'a [u32], allowed: impl Fn(u32) -> bool + 'a) -> Vec<u32> {
    support.iter().copied().filter(|r| !allowed(*r)).collect()
}

/// Checks the hypotheses of `cond` on `spec`.
pub fn theorem_applies(spec: &FieldSpec, cond: &TheoremCondition) -> Applicability {
    if let Err(e) = cond.validate() {
        return verdict(false, e.to_string());
    }
    if !spec.hamiltonian {
        return verdict(false, "the criteria concern real Hamiltonian fields");
    }
    if spec.is_trivial() {
        return verdict(false, "trivial perturbation");
    }
    let support = spec.support();
    let deg = *support.last().expect("nontrivial");
    let undecided = |i: u32| {
        verdict(
            false,
            format!("p[{i},{i}] is symbolic; hypothesis undecided"),
        )
    };
    match *cond {
        TheoremCondition::T1a => {
            if deg % 2 == 1 {
                return verdict(false, format!("degree {deg} is odd"));
            }
            let n = deg / 2;
            for r in 1..n {
                let Some(sign) = central_im(spec, r) else {
                    return undecided(r);
                };
                if sign == std::cmp::Ordering::Greater {
                    return if r + 1 < n {
                        verdict(
                            true,
                            format!("degree {deg}, p[i,i] = 0 for i < {r}, Im p[{r},{r}] > 0"),
                        )
                    } else {
                        verdict(false, format!("first nonzero central coefficient at r = {r} = n−1; 1a needs r < n−1"))
                    };
                }
                if !central_zero(spec, r).expect("numeric") {
                    return verdict(
                        false,
                        format!("Im p[{r},{r}] < 0 at the first nonzero central coefficient"),
                    );
                }
            }
            verdict(false, format!("p[i,i] = 0 for all i < {n}; see 1b"))
        }
        TheoremCondition::T1b => {
            if deg % 2 == 1 {
                return verdict(false, format!("degree {deg} is odd"));
            }
            let n = deg / 2;
            for i in 1..n {
                match central_zero(spec, i) {
                    None => return undecided(i),
                    Some(false) => return verdict(false, format!("p[{i},{i}] ≠ 0")),
                    Some(true) => {}
                }
            }
            verdict(
                true,
                format!("degree {deg} and p[i,i] = 0 for i = 1..{}", n - 1),
            )
        }
        TheoremCondition::Weak => {
            let odd = outside(&support, |r| r % 2 == 0);
            if odd.is_empty() {
                verdict(true, format!("only even components {support:?}"))
            } else {
                verdict(false, format!("odd components {odd:?} present"))
            }
        }
        TheoremCondition::T2 { k, l } => {
            let bad = outside(&support, |r| (k..=2 * l).contains(&r));
            if bad.is_empty() {
                verdict(true, format!("support {support:?} within {k}..={}", 2 * l))
            } else {
                verdict(false, format!("components {bad:?} outside {k}..={}", 2 * l))
            }
        }
        TheoremCondition::T3 { k, l, m } => {
            let blocks: Vec<(u64, u64)> = c_sequence(l, m)
                .into_iter()
                .map(|c| (c, 2 * (c - 1)))
                .collect();
            let bad = outside(&support, |r| {
                (k..=2 * l).contains(&r)
                    || blocks.iter().any(|(a, b)| (*a..=*b).contains(&(r as u64)))
            });
            if bad.is_empty() {
                verdict(
                    true,
                    format!(
                        "support {support:?} within {k}..={} and blocks {blocks:?}",
                        2 * l
                    ),
                )
            } else {
                verdict(
                    false,
                    format!(
                        "components {bad:?} outside {k}..={} and blocks {blocks:?}",
                        2 * l
                    ),
                )
            }
        }
        TheoremCondition::T4i { k, l, r, n } => {
            let bad = outside(&support, |s| {
                (k..=2 * l + 1).contains(&s) || (r..=r + n).contains(&s)
            });
            if !bad.is_empty() {
                return verdict(
                    false,
                    format!(
                        "components {bad:?} outside {k}..={} and {r}..={}",
                        2 * l + 1,
                        r + n
                    ),
                );
            }
            match central_im(spec, l) {
                None => undecided(l),
                Some(std::cmp::Ordering::Greater) => {
                    verdict(true, format!("form (i) with Im p[{l},{l}] > 0"))
                }
                Some(_) => verdict(false, format!("Im p[{l},{l}] is not positive")),
            }
        }
        TheoremCondition::T4ii { k, l, r, n } => {
            let lone = 4 * l - 1;
            let bad = outside(&support, |s| {
                (k..=2 * l).contains(&s) || s == lone || (r..=r + n).contains(&s)
            });
            let reading =
                "form (ii) read as X_lin + X_k + … (a '+' is missing in the printed statement)";
            if !bad.is_empty() {
                return verdict(
                    false,
                    format!(
                        "components {bad:?} outside {k}..={}, {lone} and {r}..={}; {reading}",
                        2 * l,
                        r + n
                    ),
                );
            }
            if !spec.component_nonzero(2 * l) {
                return verdict(false, format!("X_{} must be nontrivial; {reading}", 2 * l));
            }
            let c = 2 * l - 1;
            match central_im(spec, c) {
                None => undecided(c),
                Some(std::cmp::Ordering::Greater) => {
                    verdict(true, format!("{reading}, Im p[{c},{c}] > 0"))
                }
                Some(_) => verdict(false, format!("Im p[{c},{c}] is not positive; {reading}")),
            }
        }
    }
}

/// One sampled field and its check.
#[derive(Clone, Debug)]
pub struct ProbeSample {
    pub spec: FieldSpec,
    pub applies: Applicability,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub cond: TheoremCondition,
    pub max_depth: u32,
    pub samples: Vec<ProbeSample>,
    /// Indices of samples that exhausted `max_depth` without a witness.
    pub flagged: Vec<usize>,
    /// Indices of samples whose verdict is `Nonisochronous`.
    pub witnessed: Vec<usize>,
}

impl ProbeReport {
    pub fn all_nonisochronous(&self) -> bool {
        self.witnessed.len() == self.samples.len()
    }
}

/// Rule for the central coefficient of an odd component.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Central {
    Free,
    Zero,
    Positive,
}

struct Plan {
    /// Component degrees that may be nonzero, with their central rule.
    allowed: BTreeMap<u32, Central>,
    /// Components that must be nonzero.
    forced: BTreeSet<u32>,
    /// At least one of these must be nonzero.
    one_of: Vec<u32>,
}

impl Plan {
    fn new(degrees: impl IntoIterator<Item = u32>) -> Self {
        Plan {
            allowed: degrees.into_iter().map(|r| (r, Central::Free)).collect(),
            forced: BTreeSet::new(),
            one_of: Vec::new(),
        }
    }
}

fn small_rat(rng: &mut ChaCha8Rng) -> num_rational::BigRational {
    rat(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

fn nonzero_small_rat(rng: &mut ChaCha8Rng) -> num_rational::BigRational {
    rat(
        rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 },
        rng.gen_range(1..=3),
    )
}

fn sample_component(
    r: u32,
    central: Central,
    force: bool,
    rng: &mut ChaCha8Rng,
) -> BTreeMap<CoeffVar, GaussRat> {
    let cv = central_variable(r);
    let mut m = BTreeMap::new();
    for v in component_coordinates(r, true, Chart::Lower) {
        let z = if Some(v) == cv {
            match central {
                Central::Zero => GaussRat::zero(),
                Central::Positive => {
                    GaussRat::imag(rat(rng.gen_range(1..=3), rng.gen_range(1..=3)))
                }
                Central::Free => GaussRat::imag(small_rat(rng)),
            }
        } else {
            GaussRat::new(small_rat(rng), small_rat(rng))
        };
        if !z.is_zero() {
            m.insert(v, z);
        }
    }
    if force && m.is_empty() {
        let v = component_coordinates(r, true, Chart::Lower)
            .into_iter()
            .find(|v| Some(*v) != cv)
            .expect("every component has a non-central coordinate");
        m.insert(v, GaussRat::real(nonzero_small_rat(rng)));
    }
    m
}

fn realize(plan: &Plan, rng: &mut ChaCha8Rng) -> FieldSpec {
    let forced_one = if plan.one_of.is_empty() {
        None
    } else {
        Some(plan.one_of[rng.gen_range(0..plan.one_of.len())])
    };
    let mut spec = FieldSpec::new(true, Chart::Lower);
    for (&r, &central) in &plan.allowed {
        let force = plan.forced.contains(&r) || forced_one == Some(r);
        let keep = force || central == Central::Positive || rng.gen_range(0..3) != 0;
        let m = if keep {
            sample_component(r, central, force, rng)
        } else {
            BTreeMap::new()
        };
        spec.components.insert(r, Component::Assigned(m));
    }
    validate_assignment(&spec)
        .expect("sampled coefficients are independent and central values imaginary")
}

/// Components of degree `r` first reach the correction at depth `2(r−1)`.
fn reachable(r: u32, max_depth: u32) -> bool {
    2 * (r - 1) <= max_depth
}

fn plan_for(cond: &TheoremCondition, max_depth: u32, rng: &mut ChaCha8Rng) -> Plan {
    let reach = |rs: &[u32]| -> Vec<u32> {
        rs.iter()
            .copied()
            .filter(|r| reachable(*r, max_depth))
            .collect()
    };
    match *cond {
        TheoremCondition::T1a => {
            let n = rng.gen_range(3..=4u32);
            let r = rng.gen_range(1..=n - 2);
            let mut plan = Plan::new(2..=2 * n);
            for i in 1..r {
                plan.allowed.insert(2 * i + 1, Central::Zero);
            }
            plan.allowed.insert(2 * r + 1, Central::Positive);
            plan.forced.insert(2 * n);
            plan
        }
        TheoremCondition::T1b => {
            let n = rng.gen_range(2..=3u32);
            let mut plan = Plan::new(2..=2 * n);
            for i in 1..n {
                plan.allowed.insert(2 * i + 1, Central::Zero);
            }
            plan.forced.insert(2 * n);
            plan.one_of = reach(&(2..=2 * n).collect::<Vec<_>>());
            plan
        }
        TheoremCondition::Weak => {
            let n = rng.gen_range(1..=3u32);
            let mut plan = Plan::new((1..=n).map(|j| 2 * j));
            plan.forced.insert(2 * n);
            plan.one_of = reach(&[2, 4]).into_iter().filter(|r| *r <= 2 * n).collect();
            plan
        }
        TheoremCondition::T2 { k, l } => {
            let mut plan = Plan::new(k..=2 * l);
            plan.one_of = reach(&(k..=2 * l).collect::<Vec<_>>());
            if plan.one_of.is_empty() {
                plan.one_of = vec![k];
            }
            plan
        }
        TheoremCondition::T3 { k, l, m } => {
            let mut degrees: Vec<u32> = (k..=2 * l).collect();
            for c in c_sequence(l, m) {
                degrees.extend(c as u32..=2 * (c as u32 - 1));
            }
            let mut plan = Plan::new(degrees.iter().copied());
            plan.one_of = reach(&degrees);
            plan
        }
        TheoremCondition::T4i { k, l, r, n } => {
            let mut plan = Plan::new((k..=2 * l + 1).chain(r..=r + n));
            plan.allowed.insert(2 * l + 1, Central::Positive);
            plan
        }
        TheoremCondition::T4ii { k, l, r, n } => {
            let mut plan = Plan::new((k..=2 * l).chain([4 * l - 1]).chain(r..=r + n));
            plan.allowed.insert(4 * l - 1, Central::Positive);
            plan.forced.insert(2 * l);
            plan
        }
    }
}

/// Samples `samples` random numeric Hamiltonian fields satisfying `cond`
/// and checks each up to `max_depth`. Samples without a witness are
/// flagged rather than failed: the guaranteed witness may lie deeper.
///
/// Beyond the hypotheses, the sampler keeps at least one nonzero component
/// of degree `≤ max_depth/2 + 1` when the class allows it, so that a
/// witness can exist within the bound.
pub fn consistency_probe(
    cond: &TheoremCondition,
    samples: usize,
    max_depth: u32,
    seed: u64,
) -> Result<ProbeReport, Error> {
    cond.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let plan = plan_for(cond, max_depth, &mut rng);
        let spec = realize(&plan, &mut rng);
        if spec.is_trivial() {
            continue;
        }
        let applies = theorem_applies(&spec, cond);
        let verdict = check_isochronous(&spec, max_depth)?.verdict;
        out.push(ProbeSample {
            spec,
            applies,
            verdict,
        });
    }
    let flagged = out
        .iter()
        .enumerate()
        .filter(|(_, s)| matches!(s.verdict, Verdict::UndeterminedUpTo(_)))
        .map(|(i, _)| i)
        .collect();
    let witnessed = out
        .iter()
        .enumerate()
        .filter(|(_, s)| s.verdict.is_nonisochronous())
        .map(|(i, _)| i)
        .collect();
    Ok(ProbeReport {
        cond: *cond,
        max_depth,
        samples: out,
        flagged,
        witnessed,
    })
}
