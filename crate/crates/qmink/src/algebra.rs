//! The noncommutative algebras and their rewriting kernel.
//!
//! Quantum side: the q-Minkowski space algebra on generators b, h, c, l with
//! central l, its quotient by l (three generators), and the q-hyperboloid
//! obtained by further quotienting by Cas - r^2. Classical side: the same
//! presentations at q = 1 (commutative), plus the x,y,z sphere family and the
//! t,x,y,z Minkowski space used as oracles.
//!
//! Every element is kept in a unique normal form: an ordered linear
//! combination of ordered monomials. Products are computed by concatenating
//! words and exhaustively rewriting out-of-order pairs; quotient algebras get
//! a second elimination pass on monomials. Confluence of the rule sets is
//! checked programmatically, not assumed.

use crate::scalar::Scalar;
use crate::{Error, Result};
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

pub type Gen = u8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum AlgebraId {
    /// q-Minkowski space algebra, generators b < h < c < l, l central.
    R4,
    /// Quotient of R4 by the ideal generated by l; generators b < h < c.
    R3,
    /// q-hyperboloid: quotient of R3 by Cas_sl - r^2.
    H2,
    /// Commutative b, h, c (q = 1 limit of R3).
    ClassicalSl2,
    /// Commutative b, h, c modulo 2bc + h^2/2 - r^2.
    ClassicalHyperboloid,
    /// Commutative b, h, c, l (q = 1 limit of R4).
    ClassicalR4,
    /// Commutative x, y, z (ambient space of the sphere).
    ClassicalSo3,
    /// Commutative x, y, z modulo x^2 + y^2 + z^2 - r^2.
    ClassicalSphere,
    /// Commutative t, x, y, z with the Lorentzian operator conventions.
    ClassicalMinkowski,
}

use AlgebraId::*;

impl AlgebraId {
    pub fn gen_names(self) -> &'static [&'static str] {
        match self {
            R4 | ClassicalR4 => &["b", "h", "c", "l"],
            R3 | H2 | ClassicalSl2 | ClassicalHyperboloid => &["b", "h", "c"],
            ClassicalSo3 | ClassicalSphere => &["x", "y", "z"],
            ClassicalMinkowski => &["t", "x", "y", "z"],
        }
    }

    pub fn arity(self) -> usize {
        self.gen_names().len()
    }

    pub fn gen_index(self, name: &str) -> Option<Gen> {
        self.gen_names()
            .iter()
            .position(|g| *g == name)
            .map(|i| i as Gen)
    }

    pub fn is_commutative(self) -> bool {
        !matches!(self, R4 | R3 | H2)
    }

    /// Quotient algebras carry a monomial-elimination pass and no generator
    /// grading.
    pub fn is_quotient(self) -> bool {
        matches!(self, H2 | ClassicalHyperboloid | ClassicalSphere)
    }

    /// The q = 1 counterpart used by the classical oracle comparisons.
    pub fn classical_counterpart(self) -> Option<AlgebraId> {
        match self {
            R4 => Some(ClassicalR4),
            R3 => Some(ClassicalSl2),
            H2 => Some(ClassicalHyperboloid),
            _ => None,
        }
    }

    pub fn parse_name(name: &str) -> Option<AlgebraId> {
        Some(match name {
            "r4" => R4,
            "r3" => R3,
            "h2" => H2,
            "sl2" => ClassicalSl2,
            "hyperboloid" => ClassicalHyperboloid,
            "r4c" => ClassicalR4,
            "so3" => ClassicalSo3,
            "sphere" => ClassicalSphere,
            "minkowski" => ClassicalMinkowski,
            _ => return None,
        })
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            R4 => "r4",
            R3 => "r3",
            H2 => "h2",
            ClassicalSl2 => "sl2",
            ClassicalHyperboloid => "hyperboloid",
            ClassicalR4 => "r4c",
            ClassicalSo3 => "so3",
            ClassicalSphere => "sphere",
            ClassicalMinkowski => "minkowski",
        }
    }

    fn rule(self, a: Gen, b: Gen) -> Option<&'static Rule> {
        let table = rule_table(self);
        table[a as usize * 4 + b as usize].as_ref()
    }

    fn monomial_valid(self, m: &Monomial) -> bool {
        match self {
            H2 | ClassicalHyperboloid => m.exp(0) == 0 || m.exp(2) == 0,
            ClassicalSphere => m.exp(2) <= 1,
            _ => true,
        }
    }
}

type Rule = Vec<(Scalar, Vec<Gen>)>;

fn build_rules(alg: AlgebraId) -> Vec<Option<Rule>> {
    let q = Scalar::q;
    let one = Scalar::one;
    let mut t: Vec<Option<Rule>> = vec![None; 16];
    let mut set = |a: Gen, b: Gen, r: Rule| t[a as usize * 4 + b as usize] = Some(r);
    match alg {
        R4 => {
            // q^2 hb - bh = -(q - q^-1) lb, l central
            let qm2 = Scalar::q_pow(-2);
            let lam = qm2.clone() * (q() - Scalar::q_pow(-1));
            set(
                1,
                0,
                vec![(qm2.clone(), vec![0, 1]), (-lam.clone(), vec![0, 3])],
            );
            set(2, 1, vec![(qm2, vec![1, 2]), (-lam, vec![2, 3])]);
            // (q^2+1)(bc - cb) + (q^2-1) h^2 = -(q - q^-1) lh
            let den = q().pow(2) + one();
            set(
                2,
                0,
                vec![
                    (one(), vec![0, 2]),
                    ((q().pow(2) - one()) / den.clone(), vec![1, 1]),
                    ((q() - Scalar::q_pow(-1)) / den, vec![1, 3]),
                ],
            );
            set(3, 0, vec![(one(), vec![0, 3])]);
            set(3, 1, vec![(one(), vec![1, 3])]);
            set(3, 2, vec![(one(), vec![2, 3])]);
        }
        R3 | H2 => {
            let qm2 = Scalar::q_pow(-2);
            set(1, 0, vec![(qm2.clone(), vec![0, 1])]);
            set(2, 1, vec![(qm2, vec![1, 2])]);
            let den = q().pow(2) + one();
            set(
                2,
                0,
                vec![
                    (one(), vec![0, 2]),
                    ((q().pow(2) - one()) / den, vec![1, 1]),
                ],
            );
        }
        _ => {
            // Commutative: plain swaps.
            let n = alg.arity() as Gen;
            for a in 0..n {
                for b in 0..a {
                    set(a, b, vec![(one(), vec![b, a])]);
                }
            }
        }
    }
    t
}

fn rule_table(alg: AlgebraId) -> &'static Vec<Option<Rule>> {
    static TABLES: OnceLock<[OnceLock<Vec<Option<Rule>>>; 9]> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    let idx = match alg {
        R4 => 0,
        R3 => 1,
        H2 => 2,
        ClassicalSl2 => 3,
        ClassicalHyperboloid => 4,
        ClassicalR4 => 5,
        ClassicalSo3 => 6,
        ClassicalSphere => 7,
        ClassicalMinkowski => 8,
    };
    tables[idx].get_or_init(|| build_rules(alg))
}

/// Ordered monomial: exponent vector over the algebra's generator list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; 4],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: [0; 4] }
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        let mut e = [0u16; 4];
        e[..exps.len()].copy_from_slice(exps);
        Monomial { exps: e }
    }

    pub fn generator(g: Gen) -> Self {
        let mut e = [0u16; 4];
        e[g as usize] = 1;
        Monomial { exps: e }
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut e = [0u16; 4];
        for i in 0..4 {
            e[i] = self.exps[i] + rhs.exps[i];
        }
        Monomial { exps: e }
    }

    pub fn try_div(&self, rhs: &Monomial) -> Option<Monomial> {
        let mut e = [0u16; 4];
        for i in 0..4 {
            e[i] = self.exps[i].checked_sub(rhs.exps[i])?;
        }
        Some(Monomial { exps: e })
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// The ordered word b^i h^j c^k l^m as generator indices.
    pub fn to_word(&self, arity: usize) -> Vec<Gen> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        for (g, &e) in self.exps[..arity].iter().enumerate() {
            for _ in 0..e {
                w.push(g as Gen);
            }
        }
        w
    }
}

/// The canonical monomial order: total degree first, then exponent vectors
/// compared lexicographically with the larger vector first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A linear combination of raw (unreduced) words with scalar coefficients.
#[derive(Clone, Debug)]
pub struct WordTerm {
    pub coeff: Scalar,
    pub word: Vec<Gen>,
}

pub type WordExpr = Vec<WordTerm>;

/// Pointwise product of two word expressions (concatenation, distributed).
pub fn we_mul(a: &WordExpr, b: &WordExpr) -> WordExpr {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for ta in a {
        for tb in b {
            let mut w = ta.word.clone();
            w.extend_from_slice(&tb.word);
            out.push(WordTerm {
                coeff: ta.coeff.clone() * tb.coeff.clone(),
                word: w,
            });
        }
    }
    out
}

pub fn we_add(a: &WordExpr, b: &WordExpr) -> WordExpr {
    let mut out = a.clone();
    out.extend(b.iter().cloned());
    out
}

pub fn we_scale(a: &WordExpr, s: &Scalar) -> WordExpr {
    a.iter()
        .map(|t| WordTerm {
            coeff: t.coeff.clone() * s.clone(),
            word: t.word.clone(),
        })
        .collect()
}

pub fn we_neg(a: &WordExpr) -> WordExpr {
    we_scale(a, &-Scalar::one())
}

pub fn we_gen(g: Gen) -> WordExpr {
    vec![WordTerm {
        coeff: Scalar::one(),
        word: vec![g],
    }]
}

pub fn we_const(s: Scalar) -> WordExpr {
    vec![WordTerm {
        coeff: s,
        word: Vec::new(),
    }]
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum ReduceStrategy {
    Leftmost,
    Rightmost,
}

/// An algebra element in unique normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCPoly {
    alg: AlgebraId,
    terms: BTreeMap<Monomial, Scalar>,
}

impl NCPoly {
    pub fn zero(alg: AlgebraId) -> Self {
        NCPoly {
            alg,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: AlgebraId) -> Self {
        NCPoly::constant(alg, Scalar::one())
    }

    pub fn constant(alg: AlgebraId, s: Scalar) -> Self {
        let mut p = NCPoly::zero(alg);
        p.add_term(Monomial::one(), s);
        p
    }

    pub fn generator(alg: AlgebraId, g: Gen) -> Self {
        assert!((g as usize) < alg.arity(), "generator index out of range");
        let mut p = NCPoly::zero(alg);
        p.add_term(Monomial::generator(g), Scalar::one());
        p
    }

    pub fn generator_named(alg: AlgebraId, name: &str) -> Result<Self> {
        let g = alg.gen_index(name).ok_or_else(|| Error::UnknownGenerator {
            name: name.to_string(),
            algebra: alg,
        })?;
        Ok(NCPoly::generator(alg, g))
    }

    pub fn algebra(&self) -> AlgebraId {
        self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Accumulate a term, dropping zero coefficients and enforcing the stored
    /// invariants: the monomial is valid for the algebra and the coefficient's
    /// denominator factors as (q-polynomial) * r^k.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        assert!(
            m.exps[self.alg.arity()..].iter().all(|&e| e == 0),
            "monomial uses generators outside the algebra"
        );
        assert!(
            self.alg.monomial_valid(&m),
            "monomial not in the normal-form basis of {:?}",
            self.alg
        );
        assert!(
            c.has_factored_denominator(),
            "coefficient denominator is not (q-polynomial) * r^k: {c}"
        );
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, rhs: &NCPoly) -> Result<NCPoly> {
        self.check_same_algebra(rhs)?;
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &NCPoly) -> Result<NCPoly> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly {
            alg: self.alg,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> NCPoly {
        if s.is_zero() {
            return NCPoly::zero(self.alg);
        }
        let mut out = NCPoly::zero(self.alg);
        for (m, c) in self.terms() {
            out.add_term(*m, c.clone() * s.clone());
        }
        out
    }

    fn check_same_algebra(&self, rhs: &NCPoly) -> Result<()> {
        if self.alg != rhs.alg {
            return Err(Error::AlgebraMismatch {
                expected: self.alg,
                found: rhs.alg,
            });
        }
        Ok(())
    }

    /// Product in the algebra: concatenate words pairwise and reduce.
    pub fn mul(&self, rhs: &NCPoly) -> Result<NCPoly> {
        self.check_same_algebra(rhs)?;
        let arity = self.alg.arity();
        let mut expr: WordExpr = Vec::new();
        for (m1, c1) in self.terms() {
            for (m2, c2) in rhs.terms() {
                let mut w = m1.to_word(arity);
                w.extend(m2.to_word(arity));
                expr.push(WordTerm {
                    coeff: c1.clone() * c2.clone(),
                    word: w,
                });
            }
        }
        Ok(normal_form_with(self.alg, &expr, ReduceStrategy::Leftmost))
    }

    pub fn pow(&self, n: u32) -> Result<NCPoly> {
        let mut acc = NCPoly::one(self.alg);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn commutator(&self, rhs: &NCPoly) -> Result<NCPoly> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    /// Re-run the rewriting kernel on the stored terms (used by the
    /// idempotence checks).
    pub fn renormalize(&self) -> NCPoly {
        let expr = self.to_word_expr();
        normal_form_with(self.alg, &expr, ReduceStrategy::Leftmost)
    }

    pub fn to_word_expr(&self) -> WordExpr {
        let arity = self.alg.arity();
        self.terms()
            .map(|(m, c)| WordTerm {
                coeff: c.clone(),
                word: m.to_word(arity),
            })
            .collect()
    }

    /// Split into homogeneous parts by total generator degree, smallest first.
    /// Not defined on quotient algebras, where the relation mixes degrees.
    pub fn homogeneous_parts(&self) -> Result<Vec<(u32, NCPoly)>> {
        if self.alg.is_quotient() {
            return Err(Error::GradingUndefined { algebra: self.alg });
        }
        Ok(self.degree_parts_unchecked())
    }

    fn degree_parts_unchecked(&self) -> Vec<(u32, NCPoly)> {
        let mut map: BTreeMap<u32, NCPoly> = BTreeMap::new();
        for (m, c) in self.terms() {
            map.entry(m.degree())
                .or_insert_with(|| NCPoly::zero(self.alg))
                .add_term(*m, c.clone());
        }
        map.into_iter().collect()
    }

    /// Split by total degree where the radius r also counts with degree 1;
    /// this is the grading that survives on the quotient algebras (the
    /// defining relations are homogeneous once r counts).
    pub fn total_degree_parts(&self) -> Vec<(i64, NCPoly)> {
        let mut map: BTreeMap<i64, NCPoly> = BTreeMap::new();
        for (m, c) in self.terms() {
            for (rd, part) in c.r_degree_parts() {
                map.entry(m.degree() as i64 + rd)
                    .or_insert_with(|| NCPoly::zero(self.alg))
                    .add_term(*m, part);
            }
        }
        map.into_iter().collect()
    }

    /// Maximum generator degree among stored monomials.
    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// If the element is a multiple of 1, return the scalar.
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::one()) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Substitute a rational value for q in every coefficient (r stays
    /// symbolic). Errors when a coefficient has a pole there.
    pub fn eval_q(&self, q0: &num_rational::BigRational) -> Result<NCPoly> {
        let mut out = NCPoly::zero(self.alg);
        for (m, c) in self.terms() {
            out.add_term(*m, c.eval_q(q0).map_err(Error::Scalar)?);
        }
        Ok(out)
    }

    /// Reinterpret the stored terms in another algebra with the same
    /// generator list (used to compare q = 1 limits with classical oracles).
    pub fn retag(&self, alg: AlgebraId) -> Result<NCPoly> {
        if alg.arity() != self.alg.arity() {
            return Err(Error::AlgebraMismatch {
                expected: self.alg,
                found: alg,
            });
        }
        let mut out = NCPoly::zero(alg);
        for (m, c) in self.terms() {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }
}

/// Reduce a word expression to the unique normal form.
pub fn normal_form(alg: AlgebraId, expr: &WordExpr) -> NCPoly {
    normal_form_with(alg, expr, ReduceStrategy::Leftmost)
}

pub fn normal_form_with(alg: AlgebraId, expr: &WordExpr, strat: ReduceStrategy) -> NCPoly {
    let mut out = NCPoly::zero(alg);
    let mut stack: Vec<(Scalar, Vec<Gen>)> = expr
        .iter()
        .filter(|t| !t.coeff.is_zero())
        .map(|t| (t.coeff.clone(), t.word.clone()))
        .collect();
    while let Some((c, w)) = stack.pop() {
        let hit = match strat {
            ReduceStrategy::Leftmost => (0..w.len().saturating_sub(1))
                .find_map(|i| alg.rule(w[i], w[i + 1]).map(|r| (i, r))),
            ReduceStrategy::Rightmost => (0..w.len().saturating_sub(1))
                .rev()
                .find_map(|i| alg.rule(w[i], w[i + 1]).map(|r| (i, r))),
        };
        match hit {
            None => {
                let mut exps = [0u16; 4];
                for g in &w {
                    exps[*g as usize] += 1;
                }
                let m = Monomial { exps };
                eliminate(alg, m, c, &mut out);
            }
            Some((i, rule)) => {
                for (rc, rw) in rule {
                    let mut nw = Vec::with_capacity(w.len());
                    nw.extend_from_slice(&w[..i]);
                    nw.extend_from_slice(rw);
                    nw.extend_from_slice(&w[i + 2..]);
                    stack.push((c.clone() * rc.clone(), nw));
                }
            }
        }
    }
    out
}

/// Second reduction pass for quotient algebras: rewrite PBW-normal monomials
/// that fall outside the quotient basis.
fn eliminate(alg: AlgebraId, m: Monomial, c: Scalar, out: &mut NCPoly) {
    match alg {
        H2 => {
            let (i, j, k) = (m.exp(0), m.exp(1), m.exp(2));
            if i == 0 || k == 0 {
                out.add_term(m, c);
                return;
            }
            // b^i h^j c^k = q^{2j} b^{i-1} h^j (bc) c^{k-1} and
            // bc = q/(q^2+1) r^2 - q^4/(q^2+1)^2 h^2 in the quotient.
            let den = Scalar::q().pow(2) + Scalar::one();
            let lam = Scalar::q() / den.clone();
            let mu = -(Scalar::q().pow(4) / (den.clone() * den));
            let tw = Scalar::q_pow(2 * j as i64);
            let r2 = Scalar::r_pow(2);
            eliminate(
                alg,
                Monomial::from_exps(&[i - 1, j, k - 1]),
                c.clone() * tw.clone() * lam * r2,
                out,
            );
            eliminate(
                alg,
                Monomial::from_exps(&[i - 1, j + 2, k - 1]),
                c * tw * mu,
                out,
            );
        }
        ClassicalHyperboloid => {
            let (i, j, k) = (m.exp(0), m.exp(1), m.exp(2));
            if i == 0 || k == 0 {
                out.add_term(m, c);
                return;
            }
            // bc = r^2/2 - h^2/4 in the quotient.
            eliminate(
                alg,
                Monomial::from_exps(&[i - 1, j, k - 1]),
                c.clone() * Scalar::rational(1, 2) * Scalar::r_pow(2),
                out,
            );
            eliminate(
                alg,
                Monomial::from_exps(&[i - 1, j + 2, k - 1]),
                c * Scalar::rational(-1, 4),
                out,
            );
        }
        ClassicalSphere => {
            let (i, j, k) = (m.exp(0), m.exp(1), m.exp(2));
            if k <= 1 {
                out.add_term(m, c);
                return;
            }
            // z^2 = r^2 - x^2 - y^2 in the quotient.
            eliminate(
                alg,
                Monomial::from_exps(&[i, j, k - 2]),
                c.clone() * Scalar::r_pow(2),
                out,
            );
            eliminate(
                alg,
                Monomial::from_exps(&[i + 2, j, k - 2]),
                -c.clone(),
                out,
            );
            eliminate(alg, Monomial::from_exps(&[i, j + 2, k - 2]), -c, out);
        }
        _ => out.add_term(m, c),
    }
}

/// All normal-form monomials of the given generator degree.
pub fn monomials_of_degree(alg: AlgebraId, degree: u32) -> Vec<Monomial> {
    let arity = alg.arity();
    let mut out = Vec::new();
    let mut exps = [0u16; 4];
    fn rec(
        alg: AlgebraId,
        arity: usize,
        pos: usize,
        left: u32,
        exps: &mut [u16; 4],
        out: &mut Vec<Monomial>,
    ) {
        if pos == arity {
            if left == 0 {
                let m = Monomial { exps: *exps };
                if alg.monomial_valid(&m) {
                    out.push(m);
                }
            }
            return;
        }
        for e in 0..=left {
            exps[pos] = e as u16;
            rec(alg, arity, pos + 1, left - e, exps, out);
        }
        exps[pos] = 0;
    }
    rec(alg, arity, 0, degree, &mut exps, &mut out);
    out.sort();
    out
}

/// Comparison used by exact division: an order under which the top monomial
/// of a product is always the exponent sum of the factors' top monomials.
/// Rewriting in the quantum algebras can only trade h for l or a bc pair for
/// h^2 / hl, so (degree, #b + #c, #h) ranks the principal monomial strictly
/// highest; on the x,y,z family the z-count plays the role of #b + #c.
fn cmp_div(alg: AlgebraId, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    let key = |m: &Monomial| -> (u32, u16, u16, [u16; 4]) {
        match alg {
            ClassicalSo3 | ClassicalSphere | ClassicalMinkowski => {
                (m.degree(), m.exp(2) as u16, 0, m.exps)
            }
            _ => (m.degree(), m.exp(0) + m.exp(2), m.exp(1), m.exps),
        }
    };
    key(a).cmp(&key(b))
}

/// Exact division by a central element: returns g with z * g = f.
///
/// The caller guarantees centrality; non-divisibility is a hard error since it
/// signals an upstream computation bug. Not available on quotient algebras
/// (where division by the relation's image is handled by scalar r powers).
pub fn divide_by_central(f: &NCPoly, z: &NCPoly) -> Result<NCPoly> {
    let alg = f.algebra();
    if alg != z.algebra() {
        return Err(Error::AlgebraMismatch {
            expected: alg,
            found: z.algebra(),
        });
    }
    if alg.is_quotient() {
        return Err(Error::Unsupported(
            "exact division on a quotient algebra".into(),
        ));
    }
    if z.is_zero() {
        return Err(Error::NonDivisible);
    }
    let lead = |p: &NCPoly| -> (Monomial, Scalar) {
        let m = p
            .terms()
            .map(|(m, _)| *m)
            .max_by(|a, b| cmp_div(alg, a, b))
            .expect("nonzero polynomial");
        let c = p.coeff(&m);
        (m, c)
    };
    let (mz, _) = lead(z);
    let mut rem = f.clone();
    let mut quot = NCPoly::zero(alg);
    while !rem.is_zero() {
        let (mf, cf) = lead(&rem);
        let Some(mg) = mf.try_div(&mz) else {
            return Err(Error::NonDivisible);
        };
        let mut gpoly = NCPoly::zero(alg);
        gpoly.add_term(mg, Scalar::one());
        let p = z.mul(&gpoly)?;
        let clead = p.coeff(&mf);
        if clead.is_zero() {
            return Err(Error::NonDivisible);
        }
        let cg = cf / clead;
        quot.add_term(mg, cg.clone());
        rem = rem.sub(&p.scale(&cg))?;
    }
    Ok(quot)
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.alg.gen_names();
        let mut first = true;
        for (m, c) in self.terms() {
            let neg = c.is_negative_lead();
            let cabs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !cabs.is_one() || m.is_one() {
                factors.push(cabs.coeff_string());
            }
            for (g, name) in names.iter().enumerate() {
                let e = m.exp(g);
                if e == 1 {
                    factors.push((*name).to_string());
                } else if e > 1 {
                    factors.push(format!("{name}^{e}"));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Outcome of the rewriting soundness checks for one algebra.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ConfluenceReport {
    pub algebra: AlgebraId,
    pub max_degree: u32,
    pub words_checked: usize,
    pub associativity_triples: usize,
    pub failures: Vec<String>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verify that the rewrite system is confluent on all words up to the given
/// length (two reduction strategies agree and reduction is idempotent), and
/// that multiplication is associative on randomized triples.
pub fn check_confluence(
    alg: AlgebraId,
    max_degree: u32,
    triples: usize,
    rng: &mut impl Rng,
) -> ConfluenceReport {
    let mut failures = Vec::new();
    let arity = alg.arity();
    let mut words_checked = 0;
    for len in 1..=max_degree {
        let mut w = vec![0 as Gen; len as usize];
        loop {
            let expr = vec![WordTerm {
                coeff: Scalar::one(),
                word: w.clone(),
            }];
            let a = normal_form_with(alg, &expr, ReduceStrategy::Leftmost);
            let b = normal_form_with(alg, &expr, ReduceStrategy::Rightmost);
            if a != b {
                failures.push(format!("strategies disagree on word {w:?}: {a} vs {b}"));
            }
            if a.renormalize() != a {
                failures.push(format!("normal form not idempotent on word {w:?}"));
            }
            words_checked += 1;
            // next word in lexicographic order
            let mut pos = w.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                if (w[pos] as usize) + 1 < arity {
                    w[pos] += 1;
                    for x in w[pos + 1..].iter_mut() {
                        *x = 0;
                    }
                    break;
                }
                w[pos] = 0;
                if pos == 0 {
                    break;
                }
            }
            if w.iter().all(|&g| g == 0) {
                break;
            }
        }
    }
    for i in 0..triples {
        let u = random_ncpoly(alg, 2, rng);
        let v = random_ncpoly(alg, 1, rng);
        let w = random_ncpoly(alg, 1, rng);
        let lhs = u.mul(&v).unwrap().mul(&w).unwrap();
        let rhs = u.mul(&v.mul(&w).unwrap()).unwrap();
        if lhs != rhs {
            failures.push(format!("associativity fails on triple #{i}"));
        }
    }
    ConfluenceReport {
        algebra: alg,
        max_degree,
        words_checked,
        associativity_triples: triples,
        failures,
    }
}

/// A small random element, used by randomized soundness checks.
pub fn random_ncpoly(alg: AlgebraId, max_degree: u32, rng: &mut impl Rng) -> NCPoly {
    let palette = [
        Scalar::one(),
        -Scalar::one(),
        Scalar::int(2),
        Scalar::q(),
        Scalar::q_pow(-1),
        Scalar::q_int(2),
        Scalar::q() - Scalar::q_pow(-1),
    ];
    let nterms = rng.gen_range(1..=3);
    let mut out = NCPoly::zero(alg);
    for _ in 0..nterms {
        let d = rng.gen_range(0..=max_degree);
        let monos = monomials_of_degree(alg, d);
        let m = monos[rng.gen_range(0..monos.len())];
        let c = palette[rng.gen_range(0..palette.len())].clone();
        out.add_term(m, c);
    }
    out
}
