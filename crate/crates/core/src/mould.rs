//! The correction mould `Carr`, evaluated on weight sequences.
//!
//! The value of `Carr` on a word depends only on the weights of its letters.
//! Lengths up to 3 use the closed forms; longer keys are resolved with the
//! variance recursion
//!
//! `ω(n1) Carr(n1..nr) + Carr((n1+n2) n3..nr) = Σ_{n = n1·b·c} Carr(n1·c) Carr(b)`
//!
//! where `b` is nonempty and `c` may be empty. Results are memoized.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::alphabet::{Letter, Word};
use crate::arith::GaussRat;

/// Weight sequence `(n1¹ − n1², …, nr¹ − nr²)` of a word.
pub type WeightKey = Vec<i64>;

/// `i·w`, the eigenvalue weight of an integer weight.
pub fn omega(w: i64) -> GaussRat {
    GaussRat::imag(crate::arith::rat(w, 1))
}

/// Grow-only memo table for `Carr`. Concurrent duplicate derivations are
/// harmless because the value is a pure function of the key.
#[derive(Default)]
pub struct MouldTable {
    cache: RwLock<HashMap<WeightKey, GaussRat>>,
}

impl MouldTable {
    pub fn new() -> Self {
        MouldTable::default()
    }

    /// Process-wide table used by [`carr_value`].
    pub fn global() -> &'static MouldTable {
        static TABLE: OnceLock<MouldTable> = OnceLock::new();
        TABLE.get_or_init(MouldTable::new)
    }

    pub fn len(&self) -> usize {
        self.cache.read().expect("mould cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn carr(&self, key: &[i64]) -> GaussRat {
        if let Some(v) = vanishing_rules(key) {
            return v;
        }
        match key.len() {
            2 => carr_closed_form_c2(&omega(key[0]), &omega(key[1])),
            3 => carr_closed_form_c3(&omega(key[0]), &omega(key[1]), &omega(key[2])),
            _ => {
                if let Some(v) = self.cache.read().expect("mould cache poisoned").get(key) {
                    return v.clone();
                }
                let v = variance_step(key, |k| self.carr(k));
                self.cache
                    .write()
                    .expect("mould cache poisoned")
                    .insert(key.to_vec(), v.clone());
                v
            }
        }
    }
}

/// Values fixed without any recursion: empty key, nonresonant keys, keys of
/// length at least 2 with a zero weight, and single letters.
fn vanishing_rules(key: &[i64]) -> Option<GaussRat> {
    if key.is_empty() || key.iter().sum::<i64>() != 0 {
        return Some(GaussRat::zero());
    }
    if key.len() == 1 {
        // the only resonant single key is (0)
        return Some(GaussRat::one());
    }
    if key.contains(&0) {
        return Some(GaussRat::zero());
    }
    None
}

/// One application of the variance recursion, solved for `Carr(key)`.
/// Requires `key[0] != 0`.
fn variance_step<F: FnMut(&[i64]) -> GaussRat>(key: &[i64], mut sub: F) -> GaussRat {
    let r = key.len();
    let mut rhs = GaussRat::zero();
    for j in 2..=r {
        let b = &key[1..j];
        let mut n1c = Vec::with_capacity(1 + r - j);
        n1c.push(key[0]);
        n1c.extend_from_slice(&key[j..]);
        let left = sub(&n1c);
        if left.is_zero() {
            continue;
        }
        rhs += &(&left * &sub(b));
    }
    let mut merged = Vec::with_capacity(r - 1);
    merged.push(key[0] + key[1]);
    merged.extend_from_slice(&key[2..]);
    rhs -= &sub(&merged);
    rhs.checked_div(&omega(key[0]))
        .expect("surviving keys have a nonzero first weight")
}

/// `Carr` on a weight key, through the process-wide memo table.
pub fn carr_value(key: &[i64]) -> GaussRat {
    MouldTable::global().carr(key)
}

/// `Carr` of a word.
pub fn carr_of_word(w: &Word) -> GaussRat {
    carr_value(&w.weights())
}

/// `Carr` computed by the variance recursion at every length ≥ 2, without
/// the closed forms or the cache. Used to cross-check the closed forms.
pub fn carr_by_recursion(key: &[i64]) -> GaussRat {
    if let Some(v) = vanishing_rules(key) {
        return v;
    }
    variance_step(key, carr_by_recursion)
}

/// `C1(z) = 1` if `z = 0`, else 0.
pub fn carr_closed_form_c1(z: &GaussRat) -> GaussRat {
    if z.is_zero() {
        GaussRat::one()
    } else {
        GaussRat::zero()
    }
}

/// `C2(z1,z2) = −1/z1` when `z1 + z2 = 0` and `z1 ≠ 0`, else 0.
pub fn carr_closed_form_c2(z1: &GaussRat, z2: &GaussRat) -> GaussRat {
    if !(z1 + z2).is_zero() || z1.is_zero() {
        return GaussRat::zero();
    }
    -z1.inv().expect("nonzero")
}

/// `C3(z1,z2,z3) = 1/(z1(z1+z2))` when `z1+z2+z3 = 0`, `z1 ≠ 0` and
/// `z1 + z2 ≠ 0`, else 0.
pub fn carr_closed_form_c3(z1: &GaussRat, z2: &GaussRat, z3: &GaussRat) -> GaussRat {
    let s = z1 + z2;
    if !(&s + z3).is_zero() || z1.is_zero() || s.is_zero() {
        return GaussRat::zero();
    }
    (z1 * &s).inv().expect("nonzero")
}

/// The normal-form mould `Tram` where it is known: length ≤ 3 on keys
/// without a zero weight (plus length 1 and nonresonant keys, where it is
/// elementary). `None` elsewhere.
pub fn tram_value(key: &[i64]) -> Option<GaussRat> {
    if key.is_empty() || key.iter().sum::<i64>() != 0 {
        return Some(GaussRat::zero());
    }
    match key.len() {
        1 => Some(GaussRat::one()),
        2 | 3 if key.contains(&0) => None,
        2 => Some(carr_closed_form_c2(&omega(key[0]), &omega(key[1]))),
        3 => Some(carr_closed_form_c3(
            &omega(key[0]),
            &omega(key[1]),
            &omega(key[2]),
        )),
        _ => None,
    }
}

/// Unit mould: 1 on single letters, 0 elsewhere.
pub fn identity_mould(w: &Word) -> GaussRat {
    if w.len() == 1 {
        GaussRat::one()
    } else {
        GaussRat::zero()
    }
}

/// All ways to cut `w` into `k ≥ 1` consecutive nonempty blocks.
pub fn block_decompositions(w: &Word) -> Vec<Vec<Word>> {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(1 << (n - 1));
    for mask in 0u64..(1u64 << (n - 1)) {
        let mut blocks = Vec::new();
        let mut cur = Vec::new();
        for (i, l) in w.letters().iter().enumerate() {
            cur.push(*l);
            if i + 1 == n || mask & (1 << i) != 0 {
                blocks.push(Word(std::mem::take(&mut cur)));
            }
        }
        out.push(blocks);
    }
    out
}

/// `(M ∘ N)^w = Σ_{w = w1···wk} M^{‖w1‖…‖wk‖} N^{w1}···N^{wk}`, where
/// `‖wi‖` is the letter sum of a block. `M` is not evaluated when the
/// `N`-product already vanishes.
pub fn mould_compose<M, N>(m: M, n: N, w: &Word) -> GaussRat
where
    M: Fn(&Word) -> GaussRat,
    N: Fn(&Word) -> GaussRat,
{
    let mut total = GaussRat::zero();
    for blocks in block_decompositions(w) {
        let mut prod = GaussRat::one();
        for b in &blocks {
            prod = &prod * &n(b);
            if prod.is_zero() {
                break;
            }
        }
        if prod.is_zero() {
            continue;
        }
        let outer: Vec<Letter> = blocks.iter().map(Word::total).collect();
        total += &(&m(&Word(outer)) * &prod);
    }
    total
}

/// All shuffles of `u` and `v`, with multiplicity.
pub fn shuffles(u: &Word, v: &Word) -> Vec<Word> {
    fn rec(u: &[Letter], v: &[Letter], cur: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if u.is_empty() && v.is_empty() {
            out.push(Word(cur.clone()));
            return;
        }
        if let Some((h, t)) = u.split_first() {
            cur.push(*h);
            rec(t, v, cur, out);
            cur.pop();
        }
        if let Some((h, t)) = v.split_first() {
            cur.push(*h);
            rec(u, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(u.letters(), v.letters(), &mut Vec::new(), &mut out);
    out
}

/// `Σ_{s ∈ u ⧢ v} M^s`; zero for every pair iff `M` is alternal.
pub fn alternality_defect<M: Fn(&Word) -> GaussRat>(m: M, u: &Word, v: &Word) -> GaussRat {
    let mut total = GaussRat::zero();
    for s in shuffles(u, v) {
        total += &m(&s);
    }
    total
}
