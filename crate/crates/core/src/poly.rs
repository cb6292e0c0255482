//! Sparse polynomials over `Q(i)` in the coefficient indeterminates
//! `p[a,b]`, `q[a,b]` and their formal conjugates.
//!
//! Conjugation is a syntactic involution: it toggles the conjugate flag of
//! every variable and conjugates every scalar. `|p|^2` is always stored as
//! the product `p*~p`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::arith::{BigRat, GaussRat};
use crate::error::PolyError;

/// Which coefficient of `B_n` a variable stands for: `p` multiplies `x∂x`,
/// `q` multiplies `y∂y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    P,
    Q,
}

/// A coefficient indeterminate such as `p[1,0]` or `~p[-1,2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoeffVar {
    pub kind: VarKind,
    pub a: i32,
    pub b: i32,
    pub conj: bool,
}

impl CoeffVar {
    pub fn p(a: i32, b: i32) -> Self {
        CoeffVar {
            kind: VarKind::P,
            a,
            b,
            conj: false,
        }
    }

    pub fn q(a: i32, b: i32) -> Self {
        CoeffVar {
            kind: VarKind::Q,
            a,
            b,
            conj: false,
        }
    }

    /// Degree of the homogeneous component the variable belongs to.
    pub fn degree(&self) -> i32 {
        self.a + self.b + 1
    }

    /// `a − b` for a plain variable, `b − a` for a conjugated one.
    pub fn weight(&self) -> i64 {
        let w = (self.a - self.b) as i64;
        if self.conj {
            -w
        } else {
            w
        }
    }

    pub fn conjugate(&self) -> Self {
        CoeffVar {
            conj: !self.conj,
            ..*self
        }
    }

    pub fn plain(&self) -> Self {
        CoeffVar {
            conj: false,
            ..*self
        }
    }

    fn sort_key(&self) -> (i32, i32, i32, VarKind, bool) {
        (self.degree(), self.a, self.b, self.kind, self.conj)
    }
}

impl PartialOrd for CoeffVar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CoeffVar {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for CoeffVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tilde = if self.conj { "~" } else { "" };
        let k = match self.kind {
            VarKind::P => 'p',
            VarKind::Q => 'q',
        };
        write!(f, "{}{}[{},{}]", tilde, k, self.a, self.b)
    }
}

impl FromStr for CoeffVar {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s.trim());
        let v = p.var()?;
        if !p.done() {
            return Err(p.err("trailing input after variable"));
        }
        Ok(v)
    }
}

/// A monomial: sorted list of `(variable, exponent)` with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(CoeffVar, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: CoeffVar) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from unsorted factors, merging repeated variables.
    pub fn from_factors<I: IntoIterator<Item = (CoeffVar, u32)>>(factors: I) -> Self {
        let mut map: BTreeMap<CoeffVar, u32> = BTreeMap::new();
        for (v, e) in factors {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn factors(&self) -> &[(CoeffVar, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().map(|(v, e)| v.weight() * *e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn conj(&self) -> Monomial {
        Monomial::from_factors(self.0.iter().map(|(v, e)| (v.conjugate(), *e)))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with canonically ordered terms and no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SymPoly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn one() -> Self {
        SymPoly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = SymPoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: CoeffVar) -> Self {
        SymPoly::monomial(Monomial::var(v), GaussRat::one())
    }

    pub fn monomial(m: Monomial, c: GaussRat) -> Self {
        let mut p = SymPoly::zero();
        p.add_term(m, c);
        p
    }

    /// `v * ~v`.
    pub fn abs_sq(v: CoeffVar) -> Self {
        SymPoly::monomial(
            Monomial::from_factors([(v, 1), (v.conjugate(), 1)]),
            GaussRat::one(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    /// The value of a constant polynomial, `None` when a variable occurs.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &SymPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymPoly {
        SymPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &GaussRat) -> SymPoly {
        if s.is_zero() {
            return SymPoly::zero();
        }
        SymPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn scale_rat(&self, q: &BigRat) -> SymPoly {
        self.scale(&GaussRat::real(q.clone()))
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SymPoly {
        let mut acc = SymPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn conj(&self) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.conj(), c.conj());
        }
        out
    }

    /// Highest monomial degree; 0 for constants and the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// True when every monomial has exactly degree `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn variables(&self) -> Vec<CoeffVar> {
        let mut vs: Vec<CoeffVar> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| *v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Rewrites every variable for which `f` returns a replacement. No
    /// conjugation bookkeeping is done: the caller supplies images for
    /// plain and conjugated variables independently.
    pub fn substitute_with<F>(&self, mut f: F) -> SymPoly
    where
        F: FnMut(&CoeffVar) -> Option<SymPoly>,
    {
        let mut cache: HashMap<CoeffVar, Option<SymPoly>> = HashMap::new();
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = SymPoly::constant(c.clone());
            let mut kept: Vec<(CoeffVar, u32)> = Vec::new();
            for (v, e) in m.factors() {
                let image = cache.entry(*v).or_insert_with(|| f(v)).clone();
                match image {
                    Some(img) => acc = acc.mul(&img.pow(*e)),
                    None => kept.push((*v, *e)),
                }
                if acc.is_zero() {
                    break;
                }
            }
            if acc.is_zero() {
                continue;
            }
            let rest = Monomial::from_factors(kept);
            for (m2, c2) in acc.terms {
                out.add_term(m2.mul(&rest), c2);
            }
        }
        out
    }

    /// Substitutes an assignment. A plain variable mapped to `z` implies its
    /// conjugate maps to `conj(z)` unless the conjugate is mapped explicitly,
    /// in which case the two images must be conjugate to each other.
    pub fn substitute(
        &self,
        assignment: &BTreeMap<CoeffVar, SymPoly>,
    ) -> Result<SymPoly, PolyError> {
        for (v, img) in assignment {
            if let Some(other) = assignment.get(&v.conjugate()) {
                if *other != img.conj() {
                    return Err(PolyError::InconsistentConjugate(v.to_string()));
                }
            }
        }
        Ok(self.substitute_with(|v| {
            assignment
                .get(v)
                .cloned()
                .or_else(|| assignment.get(&v.conjugate()).map(SymPoly::conj))
        }))
    }

    /// Evaluates to a number; every variable must be assigned (conjugates
    /// follow from plain variables).
    pub fn evaluate(&self, values: &BTreeMap<CoeffVar, GaussRat>) -> Result<GaussRat, PolyError> {
        let map: BTreeMap<CoeffVar, SymPoly> = values
            .iter()
            .map(|(v, z)| (*v, SymPoly::constant(z.clone())))
            .collect();
        let out = self.substitute(&map)?;
        out.as_constant()
            .ok_or_else(|| PolyError::Unassigned(out.variables()[0].to_string()))
    }

    /// Splits the polynomial by total monomial weight.
    pub fn weight_grade(&self) -> BTreeMap<i64, SymPoly> {
        let mut out: BTreeMap<i64, SymPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight())
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        out
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "({})", c)?;
            } else {
                write!(f, "({})*{}", c, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for SymPoly {
    type Err = PolyError;

    /// Parses the canonical text form. Also accepts terms without a leading
    /// coefficient, repeated factors, and `-` between terms.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s);
        p.skip_ws();
        if p.done() {
            return Err(p.err("empty polynomial"));
        }
        let mut out = SymPoly::zero();
        let mut negate = false;
        loop {
            p.skip_ws();
            let (m, c) = p.term()?;
            out.add_term(m, if negate { -c } else { c });
            p.skip_ws();
            if p.done() {
                break;
            }
            match p.bump() {
                Some('+') => negate = false,
                Some('-') => negate = true,
                _ => return Err(p.err("expected '+' between terms")),
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err(&self, message: &str) -> PolyError {
        PolyError::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn done(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn expect(&mut self, c: char) -> Result<(), PolyError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c)))
        }
    }

    fn int(&mut self) -> Result<i64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-' | '+')) {
            self.bump();
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("expected integer"))
    }

    fn var(&mut self) -> Result<CoeffVar, PolyError> {
        self.skip_ws();
        let conj = if self.peek() == Some('~') {
            self.bump();
            true
        } else {
            false
        };
        let kind = match self.bump() {
            Some('p') => VarKind::P,
            Some('q') => VarKind::Q,
            _ => return Err(self.err("expected variable p[a,b] or q[a,b]")),
        };
        self.expect('[')?;
        let a = self.int()?;
        self.expect(',')?;
        let b = self.int()?;
        self.expect(']')?;
        let (a, b) = (a as i32, b as i32);
        if a < -1 || b < -1 || a + b < 1 {
            return Err(self.err("variable index outside the admissible letters"));
        }
        Ok(CoeffVar { kind, a, b, conj })
    }

    fn factor(&mut self) -> Result<(CoeffVar, u32), PolyError> {
        let v = self.var()?;
        self.skip_ws();
        let e = if self.peek() == Some('^') {
            self.bump();
            let e = self.int()?;
            if e < 1 {
                return Err(self.err("exponent must be positive"));
            }
            e as u32
        } else {
            1
        };
        Ok((v, e))
    }

    fn term(&mut self) -> Result<(Monomial, GaussRat), PolyError> {
        self.skip_ws();
        let mut coeff = GaussRat::one();
        let mut factors = Vec::new();
        if self.peek() == Some('(') {
            self.bump();
            let rest = &self.src[self.pos..];
            let close = rest.find(')').ok_or_else(|| self.err("unclosed '('"))?;
            coeff = rest[..close]
                .parse()
                .map_err(|_| self.err("bad coefficient"))?;
            self.pos += close + 1;
        } else if self.peek() == Some('0') {
            self.bump();
            return Ok((Monomial::one(), GaussRat::zero()));
        } else {
            factors.push(self.factor()?);
        }
        loop {
            self.skip_ws();
            if self.peek() != Some('*') {
                break;
            }
            self.bump();
            factors.push(self.factor()?);
        }
        Ok((Monomial::from_factors(factors), coeff))
    }
}

/// Scalar ring used by operator coefficients: exact numbers for evaluated
/// fields, polynomials for symbolic ones.
pub trait Coefficient: Clone + PartialEq + fmt::Display + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn from_scalar(c: GaussRat) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &GaussRat) -> Self;
    fn conj(&self) -> Self;

    fn scale_int(&self, n: i64) -> Self {
        self.scale(&GaussRat::from_int(n))
    }
}

impl Coefficient for GaussRat {
    fn zero() -> Self {
        GaussRat::zero()
    }
    fn from_scalar(c: GaussRat) -> Self {
        c
    }
    fn is_zero(&self) -> bool {
        GaussRat::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &GaussRat) -> Self {
        self * c
    }
    fn conj(&self) -> Self {
        GaussRat::conj(self)
    }
}

impl Coefficient for SymPoly {
    fn zero() -> Self {
        SymPoly::zero()
    }
    fn from_scalar(c: GaussRat) -> Self {
        SymPoly::constant(c)
    }
    fn is_zero(&self) -> bool {
        SymPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        SymPoly::add(self, other)
    }
    fn add_assign(&mut self, other: &Self) {
        SymPoly::add_assign(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        SymPoly::mul(self, other)
    }
    fn scale(&self, c: &GaussRat) -> Self {
        SymPoly::scale(self, c)
    }
    fn conj(&self) -> Self {
        SymPoly::conj(self)
    }
}
