//! Expression front-end for algebra elements.
//!
//! Grammar: `+`, `-`, `*`, `/`, integer `^` powers and parentheses over
//! integer literals, the scalar indeterminates q and r, and the generators of
//! the chosen algebra. `*` is mandatory between factors (juxtaposition is
//! rejected: silent products are too error-prone in a noncommutative ring),
//! `^` binds tighter than `*`, and `/` only accepts scalar divisors. On the
//! q-Minkowski algebra the matrix generators a and d are accepted and resolve
//! through a = (l + q h)/2_q, d = (l - q^-1 h)/2_q.

use crate::algebra::{
    normal_form, we_add, we_const, we_mul, we_neg, we_scale, AlgebraId, NCPoly, WordExpr, WordTerm,
};
use crate::scalar::Scalar;
use crate::{Error, Result};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                out.push((pos, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((pos, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((pos, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((pos, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((pos, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((pos, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((pos, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                out.push((start + 1, Tok::Int(s.parse().unwrap())));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                out.push((start + 1, Tok::Ident(s)));
            }
            other => {
                return Err(Error::Parse {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

/// Abstract syntax of an input expression.
#[derive(Clone, Debug)]
pub enum ExprAst {
    Int(BigInt),
    Q,
    R,
    Gen(u8),
    /// Derived q-Minkowski generator a = (l + q h)/2_q.
    GenA,
    /// Derived q-Minkowski generator d = (l - q^-1 h)/2_q.
    GenD,
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, i64),
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    alg: AlgebraId,
    text_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.text_len + 1)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        let pos = self.here();
        match self.bump() {
            Some(x) if x == t => Ok(()),
            _ => Err(Error::Parse {
                pos,
                msg: format!("expected {what}"),
            }),
        }
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = ExprAst::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = ExprAst::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = ExprAst::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    acc = ExprAst::Div(Box::new(acc), Box::new(self.factor()?));
                }
                // Juxtaposition: two factors with no operator in between.
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    return Err(Error::Parse {
                        pos: self.here(),
                        msg: "missing `*` between factors".into(),
                    });
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ExprAst> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(ExprAst::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let neg = if matches!(self.peek(), Some(Tok::Minus)) {
                self.bump();
                true
            } else {
                false
            };
            let pos = self.here();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let n: i64 = i64::try_from(&n).map_err(|_| Error::Parse {
                        pos,
                        msg: "exponent out of range".into(),
                    })?;
                    Ok(ExprAst::Pow(Box::new(base), if neg { -n } else { n }))
                }
                _ => Err(Error::Parse {
                    pos,
                    msg: "expected integer exponent after `^`".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<ExprAst> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(ExprAst::Int(n)),
            Some(Tok::Ident(s)) => match s.as_str() {
                "q" => Ok(ExprAst::Q),
                "r" => Ok(ExprAst::R),
                "a" if self.alg == AlgebraId::R4 => Ok(ExprAst::GenA),
                "d" if self.alg == AlgebraId::R4 => Ok(ExprAst::GenD),
                name => match self.alg.gen_index(name) {
                    Some(g) => Ok(ExprAst::Gen(g)),
                    None => Err(Error::Parse {
                        pos,
                        msg: format!("unknown generator `{name}` for {:?}", self.alg),
                    }),
                },
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "closing `)`")?;
                Ok(inner)
            }
            Some(t) => Err(Error::Parse {
                pos,
                msg: format!("unexpected token {t:?}"),
            }),
            None => Err(Error::Parse {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parse an expression into its AST.
pub fn parse_expr(text: &str, alg: AlgebraId) -> Result<ExprAst> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        alg,
        text_len: text.len(),
    };
    let ast = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse {
            pos: p.here(),
            msg: "trailing input".into(),
        });
    }
    Ok(ast)
}

fn scalar_of(expr: &WordExpr, pos_hint: usize) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for t in expr {
        if !t.word.is_empty() {
            return Err(Error::Parse {
                pos: pos_hint,
                msg: "divisor must be a scalar expression".into(),
            });
        }
        acc = acc + t.coeff.clone();
    }
    Ok(acc)
}

/// Evaluate an AST into a raw word expression (no rewriting yet).
pub fn eval_to_words(ast: &ExprAst, alg: AlgebraId) -> Result<WordExpr> {
    Ok(match ast {
        ExprAst::Int(n) => we_const(
            Scalar::from_fraction(
                crate::scalar::BiPoly::from_uni(crate::scalar::UniPoly::constant(n.clone())),
                crate::scalar::BiPoly::one(),
            )
            .unwrap(),
        ),
        ExprAst::Q => we_const(Scalar::q()),
        ExprAst::R => we_const(Scalar::r()),
        ExprAst::Gen(g) => vec![WordTerm {
            coeff: Scalar::one(),
            word: vec![*g],
        }],
        ExprAst::GenA => {
            let winv = Scalar::q_int(2).inv().unwrap();
            vec![
                WordTerm {
                    coeff: winv.clone(),
                    word: vec![3],
                },
                WordTerm {
                    coeff: Scalar::q() * winv,
                    word: vec![1],
                },
            ]
        }
        ExprAst::GenD => {
            let winv = Scalar::q_int(2).inv().unwrap();
            vec![
                WordTerm {
                    coeff: winv.clone(),
                    word: vec![3],
                },
                WordTerm {
                    coeff: -(Scalar::q_pow(-1) * winv),
                    word: vec![1],
                },
            ]
        }
        ExprAst::Neg(e) => we_neg(&eval_to_words(e, alg)?),
        ExprAst::Add(a, b) => we_add(&eval_to_words(a, alg)?, &eval_to_words(b, alg)?),
        ExprAst::Sub(a, b) => we_add(&eval_to_words(a, alg)?, &we_neg(&eval_to_words(b, alg)?)),
        ExprAst::Mul(a, b) => we_mul(&eval_to_words(a, alg)?, &eval_to_words(b, alg)?),
        ExprAst::Div(a, b) => {
            let denom = scalar_of(&eval_to_words(b, alg)?, 0)?;
            if denom.is_zero() {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "division by zero".into(),
                });
            }
            we_scale(&eval_to_words(a, alg)?, &denom.inv().unwrap())
        }
        ExprAst::Pow(base, n) => {
            let b = eval_to_words(base, alg)?;
            if *n < 0 {
                let s = scalar_of(&b, 0)?;
                if s.is_zero() {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: "zero to a negative power".into(),
                    });
                }
                we_const(s.pow(*n))
            } else {
                let mut acc = we_const(Scalar::one());
                for _ in 0..*n {
                    acc = we_mul(&acc, &b);
                }
                acc
            }
        }
    })
}

/// Parse and reduce to normal form in one step.
pub fn parse_poly(text: &str, alg: AlgebraId) -> Result<NCPoly> {
    let ast = parse_expr(text, alg)?;
    let words = eval_to_words(&ast, alg)?;
    Ok(normal_form(alg, &words))
}
