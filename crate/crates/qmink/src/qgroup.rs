//! The quantum group U_q(sl(2)) action on the quantum algebras.
//!
//! Generators K, K^-1, X, Y with K X = q^2 X K, K Y = q^-2 Y K and
//! XY - YX = (K - K^-1)/(q - q^-1). The action on products goes through the
//! theta-family of coproducts
//!
//!   D(X) = X (x) K^{theta-1} + K^theta (x) X,
//!   D(Y) = Y (x) K^{-theta}  + K^{1-theta} (x) Y,
//!
//! with theta restricted to integers so every twist stays inside Q(q). On the
//! generators: K(b) = q^2 b, K(h) = h, K(c) = q^-2 c, K(l) = l,
//! X(b) = 0, X(h) = -q^theta 2_q b, X(c) = q^{1-theta} h,
//! Y(b) = -q^{-theta} h, Y(h) = q^{theta-1} 2_q c, Y(c) = 0, X(l) = Y(l) = 0.

use crate::algebra::{
    monomials_of_degree, normal_form, we_add, we_scale, AlgebraId, Gen, NCPoly, WordExpr, WordTerm,
};
use crate::scalar::Scalar;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QGGen {
    K,
    Kinv,
    X,
    Y,
}

impl QGGen {
    pub fn parse_name(name: &str) -> Option<QGGen> {
        Some(match name {
            "K" => QGGen::K,
            "Kinv" => QGGen::Kinv,
            "X" => QGGen::X,
            "Y" => QGGen::Y,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ActionConfig {
    pub theta: i64,
}

impl Default for ActionConfig {
    fn default() -> Self {
        ActionConfig { theta: 0 }
    }
}

fn is_quantum(alg: AlgebraId) -> bool {
    matches!(alg, AlgebraId::R4 | AlgebraId::R3 | AlgebraId::H2)
}

/// K-weight of a generator: K(g) = q^{wt} g.
fn weight(g: Gen) -> i64 {
    match g {
        0 => 2,  // b
        2 => -2, // c
        _ => 0,  // h, l
    }
}

fn word_weight(w: &[Gen]) -> i64 {
    w.iter().map(|&g| weight(g)).sum()
}

/// X applied to a single generator, as a word expression.
fn x_on_gen(g: Gen, theta: i64) -> WordExpr {
    match g {
        1 => vec![WordTerm {
            coeff: -(Scalar::q_pow(theta) * Scalar::q_int(2)),
            word: vec![0],
        }],
        2 => vec![WordTerm {
            coeff: Scalar::q_pow(1 - theta),
            word: vec![1],
        }],
        _ => Vec::new(),
    }
}

/// Y applied to a single generator, as a word expression.
fn y_on_gen(g: Gen, theta: i64) -> WordExpr {
    match g {
        0 => vec![WordTerm {
            coeff: -Scalar::q_pow(-theta),
            word: vec![1],
        }],
        1 => vec![WordTerm {
            coeff: Scalar::q_pow(theta - 1) * Scalar::q_int(2),
            word: vec![2],
        }],
        _ => Vec::new(),
    }
}

/// Apply a quantum group generator to a raw word, without reducing. The
/// coproduct expansion works letter by letter: for a word g w,
/// X(g w) = X(g) K^{theta-1}(w) + K^theta(g) X(w), and K is grouplike.
fn act_on_word(gen: QGGen, w: &[Gen], theta: i64) -> WordExpr {
    match gen {
        QGGen::K => vec![WordTerm {
            coeff: Scalar::q_pow(word_weight(w)),
            word: w.to_vec(),
        }],
        QGGen::Kinv => vec![WordTerm {
            coeff: Scalar::q_pow(-word_weight(w)),
            word: w.to_vec(),
        }],
        QGGen::X => {
            if w.is_empty() {
                return Vec::new();
            }
            let g = w[0];
            let rest = &w[1..];
            let mut out = Vec::new();
            // X(g) * K^{theta-1}(rest)
            for t in x_on_gen(g, theta) {
                let mut word = t.word;
                word.extend_from_slice(rest);
                out.push(WordTerm {
                    coeff: t.coeff * Scalar::q_pow((theta - 1) * word_weight(rest)),
                    word,
                });
            }
            // K^theta(g) * X(rest)
            let kg = Scalar::q_pow(theta * weight(g));
            for t in act_on_word(QGGen::X, rest, theta) {
                let mut word = vec![g];
                word.extend_from_slice(&t.word);
                out.push(WordTerm {
                    coeff: kg.clone() * t.coeff,
                    word,
                });
            }
            out
        }
        QGGen::Y => {
            if w.is_empty() {
                return Vec::new();
            }
            let g = w[0];
            let rest = &w[1..];
            let mut out = Vec::new();
            // Y(g) * K^{-theta}(rest)
            for t in y_on_gen(g, theta) {
                let mut word = t.word;
                word.extend_from_slice(rest);
                out.push(WordTerm {
                    coeff: t.coeff * Scalar::q_pow(-theta * word_weight(rest)),
                    word,
                });
            }
            // K^{1-theta}(g) * Y(rest)
            let kg = Scalar::q_pow((1 - theta) * weight(g));
            for t in act_on_word(QGGen::Y, rest, theta) {
                let mut word = vec![g];
                word.extend_from_slice(&t.word);
                out.push(WordTerm {
                    coeff: kg.clone() * t.coeff,
                    word,
                });
            }
            out
        }
    }
}

/// Apply the action to a raw word expression, without reducing. This is the
/// form used to check that the defining ideals are invariant: the action must
/// be evaluated on free words before any rewriting.
pub fn act_word_expr(gen: QGGen, expr: &WordExpr, cfg: ActionConfig) -> WordExpr {
    let mut out = Vec::new();
    for t in expr {
        let acted = act_on_word(gen, &t.word, cfg.theta);
        out = we_add(&out, &we_scale(&acted, &t.coeff));
    }
    out
}

/// Apply a quantum group generator to a normal-form element.
pub fn act(gen: QGGen, f: &NCPoly, cfg: ActionConfig) -> Result<NCPoly> {
    if !is_quantum(f.algebra()) {
        return Err(Error::Unsupported(format!(
            "quantum group action on {:?}",
            f.algebra()
        )));
    }
    let acted = act_word_expr(gen, &f.to_word_expr(), cfg);
    Ok(normal_form(f.algebra(), &acted))
}

/// True when X(f) = 0, Y(f) = 0 and K(f) = f.
pub fn is_invariant(f: &NCPoly, cfg: ActionConfig) -> Result<bool> {
    Ok(act(QGGen::X, f, cfg)?.is_zero()
        && act(QGGen::Y, f, cfg)?.is_zero()
        && act(QGGen::K, f, cfg)? == *f)
}

/// Defining relations of the quantum algebras as raw word expressions; each
/// normal-forms to zero.
pub fn defining_relations(alg: AlgebraId) -> Vec<(String, WordExpr)> {
    let q2 = Scalar::q_pow(2);
    let lam = Scalar::q() - Scalar::q_pow(-1);
    let one = Scalar::one;
    let t = |c: Scalar, w: &[Gen]| WordTerm {
        coeff: c,
        word: w.to_vec(),
    };
    match alg {
        AlgebraId::R3 | AlgebraId::H2 => {
            let mut rels = vec![
                (
                    "q^2 h b - b h".to_string(),
                    vec![t(q2.clone(), &[1, 0]), t(-one(), &[0, 1])],
                ),
                (
                    "q^2 c h - h c".to_string(),
                    vec![t(q2.clone(), &[2, 1]), t(-one(), &[1, 2])],
                ),
                (
                    "(q^2+1)(b c - c b) + (q^2-1) h^2".to_string(),
                    vec![
                        t(q2.clone() + one(), &[0, 2]),
                        t(-(q2.clone() + one()), &[2, 0]),
                        t(q2.clone() - one(), &[1, 1]),
                    ],
                ),
            ];
            if alg == AlgebraId::H2 {
                rels.push((
                    "Cas_sl - r^2".to_string(),
                    vec![
                        t(Scalar::q_pow(-1), &[0, 2]),
                        t(Scalar::q_int(2).inv().unwrap(), &[1, 1]),
                        t(Scalar::q(), &[2, 0]),
                        t(-Scalar::r_pow(2), &[]),
                    ],
                ));
            }
            rels
        }
        AlgebraId::R4 => vec![
            (
                "q^2 h b - b h + (q - q^-1) l b".to_string(),
                vec![
                    t(q2.clone(), &[1, 0]),
                    t(-one(), &[0, 1]),
                    t(lam.clone(), &[3, 0]),
                ],
            ),
            (
                "q^2 c h - h c + (q - q^-1) l c".to_string(),
                vec![
                    t(q2.clone(), &[2, 1]),
                    t(-one(), &[1, 2]),
                    t(lam.clone(), &[3, 2]),
                ],
            ),
            (
                "(q^2+1)(b c - c b) + (q^2-1) h^2 + (q - q^-1) l h".to_string(),
                vec![
                    t(q2.clone() + one(), &[0, 2]),
                    t(-(q2.clone() + one()), &[2, 0]),
                    t(q2.clone() - one(), &[1, 1]),
                    t(lam, &[3, 1]),
                ],
            ),
            (
                "b l - l b".to_string(),
                vec![t(one(), &[0, 3]), t(-one(), &[3, 0])],
            ),
            (
                "h l - l h".to_string(),
                vec![t(one(), &[1, 3]), t(-one(), &[3, 1])],
            ),
            (
                "c l - l c".to_string(),
                vec![t(one(), &[2, 3]), t(-one(), &[3, 2])],
            ),
        ],
        _ => Vec::new(),
    }
}

/// The reflection-equation presentation on the matrix generators a, b, c, d,
/// expanded through a = (l + q h)/2_q, d = (l - q^-1 h)/2_q into raw word
/// expressions over b, h, c, l. Each normal-forms to zero in the q-Minkowski
/// algebra.
pub fn rea_relations() -> Vec<(String, WordExpr)> {
    use crate::algebra::{we_const, we_gen, we_mul, we_neg};
    let two_q_inv = Scalar::q_int(2).inv().unwrap();
    // a = (l + q h)/2_q, d = (l - q^-1 h)/2_q
    let a: WordExpr = vec![
        WordTerm {
            coeff: two_q_inv.clone(),
            word: vec![3],
        },
        WordTerm {
            coeff: Scalar::q() * two_q_inv.clone(),
            word: vec![1],
        },
    ];
    let d: WordExpr = vec![
        WordTerm {
            coeff: two_q_inv.clone(),
            word: vec![3],
        },
        WordTerm {
            coeff: -(Scalar::q_pow(-1) * two_q_inv),
            word: vec![1],
        },
    ];
    let b = we_gen(0);
    let c = we_gen(2);
    let q = Scalar::q();
    let qi = Scalar::q_pow(-1);
    let lam = q.clone() - qi.clone();
    let qs = |s: &Scalar| we_const(s.clone());
    let mul = we_mul;
    let sub = |x: &WordExpr, y: &WordExpr| we_add(x, &we_neg(y));
    vec![
        (
            "q a b - q^-1 b a".to_string(),
            sub(&mul(&qs(&q), &mul(&a, &b)), &mul(&qs(&qi), &mul(&b, &a))),
        ),
        (
            "q c a - q^-1 a c".to_string(),
            sub(&mul(&qs(&q), &mul(&c, &a)), &mul(&qs(&qi), &mul(&a, &c))),
        ),
        ("a d - d a".to_string(), sub(&mul(&a, &d), &mul(&d, &a))),
        (
            "q(b c - c b) - (q - q^-1) a (d - a)".to_string(),
            sub(
                &mul(&qs(&q), &sub(&mul(&b, &c), &mul(&c, &b))),
                &mul(&qs(&lam), &mul(&a, &sub(&d, &a))),
            ),
        ),
        (
            "q(c d - d c) - (q - q^-1) c a".to_string(),
            sub(
                &mul(&qs(&q), &sub(&mul(&c, &d), &mul(&d, &c))),
                &mul(&qs(&lam), &mul(&c, &a)),
            ),
        ),
        (
            "q(d b - b d) - (q - q^-1) a b".to_string(),
            sub(
                &mul(&qs(&q), &sub(&mul(&d, &b), &mul(&b, &d))),
                &mul(&qs(&lam), &mul(&a, &b)),
            ),
        ),
    ]
}

/// Module-algebra verification: the defining ideal is invariant under the
/// action, and the Hopf algebra relations hold as operator identities on all
/// normal monomials up to the given degree.
#[derive(Clone, Debug)]
pub struct ModuleAlgebraReport {
    pub algebra: AlgebraId,
    pub theta: i64,
    pub max_degree: u32,
    pub failures: Vec<String>,
}

impl ModuleAlgebraReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_module_algebra(
    alg: AlgebraId,
    cfg: ActionConfig,
    max_degree: u32,
) -> ModuleAlgebraReport {
    let mut failures = Vec::new();
    // Sanity: the relations really are relations.
    for (name, rel) in defining_relations(alg) {
        if !normal_form(alg, &rel).is_zero() {
            failures.push(format!("relation `{name}` does not normal-form to zero"));
            continue;
        }
        for gen in [QGGen::K, QGGen::Kinv, QGGen::X, QGGen::Y] {
            let acted = act_word_expr(gen, &rel, cfg);
            let reduced = normal_form(alg, &acted);
            if !reduced.is_zero() {
                failures.push(format!(
                    "{gen:?} does not preserve relation `{name}`: residual {reduced}"
                ));
            }
        }
    }
    // Hopf relations as operator identities on normal monomials.
    let q2 = Scalar::q_pow(2);
    let lam_inv = (Scalar::q() - Scalar::q_pow(-1)).inv().unwrap();
    let degrees = if alg.is_quotient() {
        // On the quotient the monomial basis is still finite per degree.
        0..=max_degree
    } else {
        0..=max_degree
    };
    for d in degrees {
        for m in monomials_of_degree(alg, d) {
            let mut f = NCPoly::zero(alg);
            f.add_term(m, Scalar::one());
            let check = |what: &str, lhs: &NCPoly, rhs: &NCPoly, failures: &mut Vec<String>| {
                if lhs != rhs {
                    failures.push(format!("{what} fails on {f}"));
                }
            };
            let k = act(QGGen::K, &f, cfg).unwrap();
            let kinv = act(QGGen::Kinv, &f, cfg).unwrap();
            check(
                "K Kinv = id",
                &act(QGGen::Kinv, &k, cfg).unwrap(),
                &f,
                &mut failures,
            );
            let x = act(QGGen::X, &f, cfg).unwrap();
            let y = act(QGGen::Y, &f, cfg).unwrap();
            check(
                "K X = q^2 X K",
                &act(QGGen::K, &x, cfg).unwrap(),
                &act(QGGen::X, &k, cfg).unwrap().scale(&q2),
                &mut failures,
            );
            check(
                "K Y = q^-2 Y K",
                &act(QGGen::K, &y, cfg).unwrap(),
                &act(QGGen::Y, &k, cfg).unwrap().scale(&Scalar::q_pow(-2)),
                &mut failures,
            );
            let xy = act(QGGen::X, &y, cfg).unwrap();
            let yx = act(QGGen::Y, &x, cfg).unwrap();
            let casimir_side = k.sub(&kinv).unwrap().scale(&lam_inv);
            check(
                "XY - YX = (K - K^-1)/(q - q^-1)",
                &xy.sub(&yx).unwrap(),
                &casimir_side,
                &mut failures,
            );
        }
    }
    ModuleAlgebraReport {
        algebra: alg,
        theta: cfg.theta,
        max_degree,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraId::*;

    fn cfg(theta: i64) -> ActionConfig {
        ActionConfig { theta }
    }

    fn gen(alg: AlgebraId, name: &str) -> NCPoly {
        NCPoly::generator_named(alg, name).unwrap()
    }

    #[test]
    fn action_on_generators() {
        for theta in [0, 1, 2] {
            let h = gen(R3, "h");
            let xh = act(QGGen::X, &h, cfg(theta)).unwrap();
            assert_eq!(
                xh,
                gen(R3, "b").scale(&-(Scalar::q_pow(theta) * Scalar::q_int(2)))
            );
            let c = gen(R3, "c");
            assert!(act(QGGen::Y, &c, cfg(theta)).unwrap().is_zero());
        }
    }

    /// Coproduct expansion on a product: X(bc) = X(b) K^{-1}(c) + b X(c) at
    /// theta = 0, expanded by hand.
    #[test]
    fn x_on_bc_matches_manual_expansion() {
        let bc = gen(R3, "b").mul(&gen(R3, "c")).unwrap();
        let got = act(QGGen::X, &bc, cfg(0)).unwrap();
        // X(b) = 0; K^0(b) = b; X(c) = q h  =>  b * (q h) = q b h
        let expect = gen(R3, "b").mul(&gen(R3, "h")).unwrap().scale(&Scalar::q());
        assert_eq!(got, expect);
    }

    #[test]
    fn k_acts_diagonally() {
        let cfg0 = cfg(0);
        for d in 0..=4u32 {
            for m in monomials_of_degree(R4, d) {
                let mut f = NCPoly::zero(R4);
                f.add_term(m, Scalar::one());
                let got = act(QGGen::K, &f, cfg0).unwrap();
                let wt = 2 * (m.exp(0) as i64 - m.exp(2) as i64);
                assert_eq!(got, f.scale(&Scalar::q_pow(wt)));
            }
        }
    }

    #[test]
    fn casimir_is_invariant() {
        let cas = crate::algebra::normal_form(
            R3,
            &vec![
                WordTerm {
                    coeff: Scalar::q_pow(-1),
                    word: vec![0, 2],
                },
                WordTerm {
                    coeff: Scalar::q_int(2).inv().unwrap(),
                    word: vec![1, 1],
                },
                WordTerm {
                    coeff: Scalar::q(),
                    word: vec![2, 0],
                },
            ],
        );
        for theta in [0, 1, 2] {
            assert!(is_invariant(&cas, cfg(theta)).unwrap());
        }
        let l2 = gen(R4, "l").pow(2).unwrap();
        assert!(is_invariant(&l2, cfg(0)).unwrap());
        assert!(!is_invariant(&gen(R3, "b"), cfg(0)).unwrap());
    }

    #[test]
    fn module_algebra_r3_r4_h2() {
        for (alg, theta, deg) in [(R3, 0, 3), (R4, 1, 3), (R3, 2, 2), (H2, 0, 2)] {
            let rep = check_module_algebra(alg, cfg(theta), deg);
            assert!(rep.passed(), "{alg:?} theta={theta}: {:?}", rep.failures);
        }
    }

    /// The commutator identity as an operator identity at degree 4, over the
    /// whole theta family used by the suites.
    #[test]
    fn hopf_relations_to_degree_four() {
        for theta in [0, 1, 2] {
            let rep = check_module_algebra(R3, cfg(theta), 4);
            assert!(rep.passed(), "theta={theta}: {:?}", rep.failures);
        }
    }

    #[test]
    fn rea_presentation_holds_and_is_covariant() {
        for (name, rel) in rea_relations() {
            let reduced = normal_form(R4, &rel);
            assert!(reduced.is_zero(), "{name}: {reduced}");
            for g in [QGGen::K, QGGen::X, QGGen::Y] {
                let acted = act_word_expr(g, &rel, cfg(0));
                assert!(normal_form(R4, &acted).is_zero(), "{g:?} on {name}");
            }
        }
    }

    /// Acting on an unreduced word and reducing agrees with reducing first.
    #[test]
    fn act_commutes_with_normal_form() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let f = crate::algebra::random_ncpoly(R3, 2, &mut rng);
            let g = crate::algebra::random_ncpoly(R3, 2, &mut rng);
            // Build the unreduced concatenation f*g as words.
            let raw = crate::algebra::we_mul(&f.to_word_expr(), &g.to_word_expr());
            for qg in [QGGen::X, QGGen::Y, QGGen::K] {
                let via_words = normal_form(R3, &act_word_expr(qg, &raw, cfg(0)));
                let via_nf = act(qg, &f.mul(&g).unwrap(), cfg(0)).unwrap();
                assert_eq!(via_words, via_nf, "{qg:?}");
            }
        }
    }
}
