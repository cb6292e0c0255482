//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails. Runs without the libtest harness so the report
//! reads top to bottom.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use isochron::alphabet::{alphabet_of_component, Letter, Word};
use isochron::analysis::{check_isochronous, consistency_probe, TheoremCondition, Verdict};
use isochron::arith::{rat, GaussRat};
use isochron::constraints::{
    central_variable, component_coordinates, hamiltonian_relations, independent_set,
    real_coefficient_count, validate_assignment, Chart, Component, FieldSpec,
};
use isochron::correction::{
    correction_numeric, correction_oracle, correction_oracle_numeric, correction_term,
    fundamental_lemma_value,
};
use isochron::error::ConstraintError;
use isochron::mould::{
    alternality_defect, carr_by_recursion, carr_closed_form_c1, carr_closed_form_c2,
    carr_closed_form_c3, carr_of_word, carr_value, omega,
};
use isochron::poly::{CoeffVar, SymPoly};
use isochron::selftest::{
    depth4_x3x3, parse_table, printed_depth4_x2x2x2x2, printed_depth4_x3x2x2, printed_depth4_x4x2,
    quadratic_depth2, quartic_depth4, upper_field, CARR_LENGTH2, CARR_LENGTH4,
};
use isochron::variety::{generators, grading_check};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    summary: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(passed: bool, summary: impl Into<String>) -> Self {
        Outcome {
            passed,
            summary: summary.into(),
            notes: Vec::new(),
        }
    }

    fn with_notes(mut self, notes: Vec<String>) -> Self {
        self.notes = notes;
        self
    }
}

fn within(start: Instant, budget: Duration, what: &str, failures: &mut Vec<String>) {
    let t = start.elapsed();
    if t > budget {
        failures.push(format!("{what} took {t:.2?}, budget {budget:.0?}"));
    }
}

fn small(rng: &mut ChaCha8Rng) -> GaussRat {
    GaussRat::from_parts(
        rng.gen_range(-3..=3),
        rng.gen_range(1..=3),
        rng.gen_range(-3..=3),
        rng.gen_range(1..=3),
    )
}

/// Random Hamiltonian numeric spec with components in `2..=max_degree`,
/// each present with probability 2/3, at least one nonzero.
fn random_hamiltonian(max_degree: u32, rng: &mut ChaCha8Rng) -> FieldSpec {
    loop {
        let mut spec = FieldSpec::new(true, Chart::Lower);
        for r in 2..=max_degree {
            if rng.gen_range(0..3) == 0 {
                continue;
            }
            let mut m = BTreeMap::new();
            for v in component_coordinates(r, true, Chart::Lower) {
                let z = small(rng);
                let z = if Some(v) == central_variable(r) {
                    GaussRat::imag(z.im().clone())
                } else {
                    z
                };
                m.insert(v, z);
            }
            spec.components.insert(r, Component::Assigned(m));
        }
        let spec = validate_assignment(&spec).expect("sampled coordinates are independent");
        if !spec.is_trivial() {
            return spec;
        }
    }
}

// 1. Golden mould tables.
fn mould_tables() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut total = 0;
    for (name, text) in [("length-2", CARR_LENGTH2), ("length-4", CARR_LENGTH4)] {
        for e in parse_table(text).expect("embedded table parses") {
            total += 1;
            let got = carr_of_word(&e.word);
            if got != e.value {
                failures.push(format!(
                    "{name} {} ({}): expected {}, got {got}",
                    e.word, e.position, e.value
                ));
            }
        }
    }
    within(start, Duration::from_secs(1), "table check", &mut failures);
    let ok = failures.is_empty() && total == 48;
    Outcome::new(
        ok,
        format!(
            "{}/{total} tabulated Carr values reproduced exactly",
            total - failures.len()
        ),
    )
    .with_notes(failures)
}

// 2. Closed forms C1, C2, C3.
fn closed_forms() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = Vec::new();
    let (mut resonant, mut with_zero, mut literal_c3_conflicts) = (0, 0, 0);
    for _ in 0..1000 {
        let len = rng.gen_range(1..=3);
        let mut key: Vec<i64> = (0..len).map(|_| rng.gen_range(-6..=6)).collect();
        // Two thirds of the tuples are made resonant; the rest are mostly not.
        if rng.gen_range(0..3) != 0 {
            let head: i64 = key[..len - 1].iter().sum();
            key[len - 1] = -head;
        }
        let z: Vec<GaussRat> = key.iter().map(|&w| omega(w)).collect();
        let closed = match len {
            1 => carr_closed_form_c1(&z[0]),
            2 => carr_closed_form_c2(&z[0], &z[1]),
            _ => carr_closed_form_c3(&z[0], &z[1], &z[2]),
        };
        let got = carr_value(&key);
        if key.iter().sum::<i64>() == 0 {
            resonant += 1;
        }
        // A zero weight inside a word of length ≥ 2 forces Carr = 0. The
        // length-3 closed form is only valid off that set.
        let expected = if len >= 2 && key.contains(&0) {
            with_zero += 1;
            if closed != GaussRat::zero() {
                literal_c3_conflicts += 1;
            }
            GaussRat::zero()
        } else {
            closed
        };
        if got != expected {
            failures.push(format!("{key:?}: expected {expected}, got {got}"));
        }
        let rec = carr_by_recursion(&key);
        if rec != got {
            failures.push(format!("{key:?}: recursion gives {rec}, table gives {got}"));
        }
    }
    within(
        start,
        Duration::from_secs(1),
        "closed-form check",
        &mut failures,
    );
    let mut notes = vec![format!(
        "{literal_c3_conflicts} of {with_zero} tuples with a zero weight have a nonzero C3 value; \
         the zero-weight rule takes precedence there"
    )];
    notes.extend(failures.iter().cloned());
    Outcome::new(
        failures.is_empty(),
        format!(
            "1000 tuples ({resonant} resonant) agree with C1/C2/C3 and with the variance recursion"
        ),
    )
    .with_notes(notes)
}

// 3. Quadratic Ca_2.
fn quadratic() -> Outcome {
    let spec = upper_field(&[2]);
    let ct = correction_term(&spec, 2).expect("depth 2");
    let oracle = correction_oracle(&spec, 2).expect("depth 2");
    let ok = ct.total == quadratic_depth2() && oracle == ct.total;
    Outcome::new(ok, format!("Ca_2 = {}", ct.total))
}

// 4. Cubic and quartic low-depth formulas.
fn cubic_quartic() -> Outcome {
    let mut failures = Vec::new();
    let cubic = upper_field(&[2, 3]);
    let cubic2 = cubic.reduce(&SymPoly::var(CoeffVar::p(1, 1)).add(&quadratic_depth2()));
    let got = correction_term(&cubic, 2).expect("depth 2").total;
    if got != cubic2 {
        failures.push(format!("cubic Ca_2: expected {cubic2}, got {got}"));
    }
    let quartic = upper_field(&[2, 3, 4]);
    let t4 = quartic_depth4().expect("depth 4");
    let x3x3 = t4.signature(&[3, 3]);
    if x3x3 != depth4_x3x3() {
        failures.push(format!(
            "Carr_4,2(X3,X3): expected {}, got {x3x3}",
            depth4_x3x3()
        ));
    }
    let printed = quartic.reduce(&printed_depth4_x4x2());
    let x4x2 = t4.signature(&[2, 4]);
    if x4x2 != printed {
        failures.push(format!(
            "Carr_4,2(X4,X2): printed {printed}, computed {x4x2}, computed − printed = {}",
            x4x2.sub(&printed)
        ));
    }
    let mut notes = failures.clone();
    for (name, printed, computed) in [
        (
            "Carr_4,3(X3,X2,X2)",
            printed_depth4_x3x2x2(),
            t4.signature(&[2, 2, 3]),
        ),
        (
            "Carr_4,4(X2,X2,X2,X2)",
            printed_depth4_x2x2x2x2(),
            t4.signature(&[2, 2, 2, 2]),
        ),
    ] {
        let printed = quartic.reduce(&printed);
        if printed == computed {
            notes.push(format!("diagnostic {name}: printed formula matches"));
        } else {
            notes.push(format!(
                "diagnostic {name}: computed − printed = {}",
                computed.sub(&printed)
            ));
        }
    }
    Outcome::new(
        failures.is_empty(),
        "cubic Ca_2 and the depth-4 parts from (X3,X3) and (X4,X2)",
    )
    .with_notes(notes)
}

// 5. Bracket route against the composition oracle.
fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for d in 2..=5 {
        for chart in [Chart::Lower, Chart::Upper] {
            let spec = FieldSpec::symbolic(2..=d, true, chart);
            for depth in [2, 4, 6] {
                checked += 1;
                let bracket = correction_term(&spec, depth).expect("even depth").total;
                let oracle = correction_oracle(&spec, depth).expect("even depth");
                if bracket != oracle {
                    failures.push(format!(
                        "symbolic degree {d}, {chart} chart, depth {depth}: routes differ"
                    ));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..50 {
        let spec = random_hamiltonian(5, &mut rng);
        for depth in [2, 4, 6] {
            let bracket = correction_numeric(&spec, depth).expect("numeric").total;
            let oracle = correction_oracle_numeric(&spec, depth).expect("numeric");
            if bracket != oracle {
                failures.push(format!(
                    "random spec {k}, depth {depth}: {bracket} vs {oracle}"
                ));
            }
        }
    }
    within(
        start,
        Duration::from_secs(60),
        "oracle equivalence",
        &mut failures,
    );
    Outcome::new(
        failures.is_empty(),
        format!(
            "{checked} symbolic and 150 numeric comparisons, exact equality, {:.1?}",
            start.elapsed()
        ),
    )
    .with_notes(failures)
}

// 6. Odd depths vanish.
fn odd_depths() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    for k in 0..50 {
        let spec = random_hamiltonian(5, &mut rng);
        for depth in [3, 5] {
            let t = correction_numeric(&spec, depth).expect("numeric");
            if !t.total.is_zero() || !t.total_y.is_zero() {
                failures.push(format!("random spec {k}: Ca_{depth} = {}", t.total));
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        "Ca_3 = Ca_5 = 0 on 50 random Hamiltonian fields of degree ≤ 5",
    )
    .with_notes(failures)
}

// 7. Closed form for fields with components in r..=2r−1.
fn fundamental_lemma() -> Outcome {
    let mut failures = Vec::new();
    for r in 2..=4u32 {
        let spec = FieldSpec::symbolic(r..=2 * r - 1, true, Chart::Upper);
        let depth = 2 * (r - 1);
        let lemma = fundamental_lemma_value(r, &spec).expect("r ≥ 2");
        let direct = correction_term(&spec, depth).expect("even depth").total;
        if lemma != direct {
            failures.push(format!("r = {r}: closed form {lemma}, direct {direct}"));
        }
        // Edge coefficient r/(r+1) of |p[−1,r]|².
        let (edge, _) = SymPoly::abs_sq(CoeffVar::p(-1, r as i32))
            .terms()
            .next()
            .map(|(m, c)| (m.clone(), c.clone()))
            .expect("one term");
        let coeff = direct
            .terms()
            .find(|(m, _)| **m == edge)
            .map(|(_, c)| c.clone());
        let want = GaussRat::imag(rat(r as i64, r as i64 + 1));
        if coeff.as_ref() != Some(&want) {
            failures.push(format!(
                "r = {r}: |p[-1,{r}]|² coefficient {coeff:?}, expected {want}"
            ));
        }
    }
    Outcome::new(
        failures.is_empty(),
        "closed form equals Ca_2(r−1) for r = 2, 3, 4; edge coefficients 2/3, 3/4, 4/5",
    )
    .with_notes(failures)
}

// 8. Reality and Hamiltonian constraints, coefficient count.
fn constraints() -> Outcome {
    let mut failures = Vec::new();
    let conj_scaled = |a: i32, b: i32, num: i64, den: i64| {
        SymPoly::var(CoeffVar::p(a, b).conjugate()).scale(&GaussRat::real(rat(num, den)))
    };
    let h2 = hamiltonian_relations(2, Chart::Lower).expect("degree 2");
    if h2.get(&CoeffVar::p(1, 0)) != Some(&conj_scaled(0, 1, -1, 2)) {
        failures.push(format!("p[1,0] relation: {:?}", h2.get(&CoeffVar::p(1, 0))));
    }
    let h3 = hamiltonian_relations(3, Chart::Lower).expect("degree 3");
    if h3.get(&CoeffVar::p(2, 0)) != Some(&conj_scaled(0, 2, -1, 3)) {
        failures.push(format!("p[2,0] relation: {:?}", h3.get(&CoeffVar::p(2, 0))));
    }
    let with_p11 = |z: &str| {
        let m = BTreeMap::from([(CoeffVar::p(1, 1), z.parse::<GaussRat>().expect("literal"))]);
        validate_assignment(
            &FieldSpec::new(true, Chart::Lower).with_component(3, Component::Assigned(m)),
        )
    };
    if !matches!(
        with_p11("1+2*i"),
        Err(ConstraintError::RealityViolation { .. })
    ) {
        failures.push("Re(p[1,1]) ≠ 0 was accepted".into());
    }
    if with_p11("2*i").is_err() {
        failures.push("purely imaginary p[1,1] was rejected".into());
    }
    // The derived value is what the field actually uses.
    let m = BTreeMap::from([(
        CoeffVar::p(0, 1),
        "2+4*i".parse::<GaussRat>().expect("literal"),
    )]);
    let spec = validate_assignment(
        &FieldSpec::new(true, Chart::Lower).with_component(2, Component::Assigned(m)),
    )
    .expect("independent coordinate");
    if spec.numeric_value(&CoeffVar::p(1, 0)) != Some("-1+2*i".parse().expect("literal")) {
        failures.push(format!(
            "derived p[1,0] = {:?}",
            spec.numeric_value(&CoeffVar::p(1, 0))
        ));
    }
    for d in 2..=8u32 {
        // Monomials x^a y^b of P with 2 ≤ a + b ≤ d.
        let enumerated = (2..=d).map(|s| (0..=s).count()).sum::<usize>();
        let listed = independent_set(d, false, Chart::Lower)
            .expect("d ≥ 2")
            .len();
        let formula = real_coefficient_count(d);
        if enumerated != formula || listed != formula {
            failures.push(format!(
                "d = {d}: formula {formula}, enumerated {enumerated}, listed {listed}"
            ));
        }
    }
    Outcome::new(
        failures.is_empty(),
        "p[1,0], p[2,0] relations, Re p[1,1] = 0, N(d) for d = 2..8",
    )
    .with_notes(failures)
}

// 9. Structural nonisochronicity criteria on seeded random fields.
fn theorem_predicates() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let conds = [
        TheoremCondition::T1a,
        TheoremCondition::T1b,
        TheoremCondition::T2 { k: 2, l: 1 },
        TheoremCondition::T2 { k: 3, l: 2 },
        TheoremCondition::T2 { k: 4, l: 3 },
        TheoremCondition::Weak,
    ];
    for (i, cond) in conds.iter().enumerate() {
        let rep = consistency_probe(cond, 20, 8, 900 + i as u64).expect("valid condition");
        if rep.samples.len() != 20 || !rep.all_nonisochronous() {
            failures.push(format!(
                "{cond}: {}/{} witnessed",
                rep.witnessed.len(),
                rep.samples.len()
            ));
        }
        if rep.samples.iter().any(|s| !s.applies.applies) {
            failures.push(format!("{cond}: a sample does not satisfy the hypotheses"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 0..20 {
        let spec = loop {
            let s = random_hamiltonian(2, &mut rng);
            if !s.is_trivial() {
                break s;
            }
        };
        match check_isochronous(&spec, 8).expect("numeric").verdict {
            Verdict::Nonisochronous { depth: 2, .. } => {}
            v => failures.push(format!("quadratic spec {k}: {v}")),
        }
    }
    within(
        start,
        Duration::from_secs(120),
        "theorem probes",
        &mut failures,
    );
    Outcome::new(
        failures.is_empty(),
        format!("6 classes × 20 samples nonisochronous within depth 8; 20 quadratic fields witness at depth 2; {:.1?}", start.elapsed()),
    )
    .with_notes(failures)
}

fn words_up_to(letters: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in letters {
                let mut v = w.0.clone();
                v.push(*l);
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

// 10. Weight grading of the generators and alternality of Carr.
fn invariance() -> Outcome {
    let mut failures = Vec::new();
    let mut sets = 0;
    for d in 2..=5 {
        for max_depth in [2, 4, 6] {
            sets += 1;
            let gs = generators(d, max_depth).expect("valid bounds");
            if !grading_check(&gs) {
                failures.push(format!(
                    "degree {d}, max depth {max_depth}: a generator has nonzero weight"
                ));
            }
        }
    }
    let letters = alphabet_of_component(2).expect("degree 2");
    let words = words_up_to(&letters, 3);
    let mut pairs = 0;
    for u in &words {
        for v in &words {
            if u.len() + v.len() > 4 {
                continue;
            }
            pairs += 1;
            let defect = alternality_defect(carr_of_word, u, v);
            if !defect.is_zero() {
                failures.push(format!("{u} ⧢ {v}: defect {defect}"));
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{sets} generator sets graded; alternality defect 0 on {pairs} word pairs"),
    )
    .with_notes(failures)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("mould golden tables", mould_tables),
        ("closed-form consistency", closed_forms),
        ("quadratic correction", quadratic),
        ("cubic and quartic corrections", cubic_quartic),
        ("oracle equivalence", oracle_equivalence),
        ("odd-depth vanishing", odd_depths),
        ("fundamental lemma", fundamental_lemma),
        ("constraint examples", constraints),
        ("theorem predicates", theorem_predicates),
        ("weight grading and alternality", invariance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let status = if out.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status}: {name}: {} [{:.2?}]",
            i + 1,
            out.summary,
            start.elapsed()
        );
        for n in &out.notes {
            println!("    {n}");
        }
        if !out.passed {
            failed += 1;
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
