//! Exact arithmetic in the coefficient field Q(q, r).
//!
//! Every quantity in the library is a reduced fraction of integer polynomials
//! in the deformation parameter `q` and the radius `r`. Equality is syntactic
//! equality of the canonical form, so all identity checks downstream are exact.
//!
//! The canonical form: numerator and denominator are coprime in Z[q, r], the
//! denominator is nonzero with a positive leading coefficient (leading in r,
//! then in q), and the integer content of the pair is reduced.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Dense univariate integer polynomial in q, coefficients ascending by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = UniPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    /// Monomial c * q^d.
    pub fn monomial(c: BigInt, d: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c;
        UniPoly { coeffs }
    }

    fn trim(&mut self) {
        while let Some(last) = self.coeffs.last() {
            if last.is_zero() {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn mul_bigint(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Integer content (gcd of coefficients), nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    fn div_bigint_exact(&self, c: &BigInt) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a / c).collect(),
        }
    }

    /// Exact division; panics if the division is not exact.
    pub fn div_exact(&self, rhs: &Self) -> Self {
        let (quot, rem) = self.pseudo_div_checked(rhs);
        assert!(rem.is_zero(), "inexact polynomial division");
        quot
    }

    /// Ordinary long division valid only when it is exact over Z; returns
    /// (quotient, remainder-with-fractions-cleared sentinel). Used internally
    /// by div_exact and gcd.
    fn pseudo_div_checked(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = UniPoly::zero();
        let dl = rhs.leading();
        while !rem.is_zero() && rem.degree() >= rhs.degree() {
            let shift = (rem.degree() - rhs.degree()) as usize;
            let lead = rem.leading();
            let (f, r) = lead.div_rem(&dl);
            if !r.is_zero() {
                // Not exactly divisible at this step: signal by nonzero remainder.
                return (quot, rem);
            }
            let term = UniPoly::monomial(f, shift);
            rem = rem.sub(&term.mul(rhs));
            quot = quot.add(&term);
        }
        (quot, rem)
    }

    /// Pseudo-remainder: lead(rhs)^(deg diff + 1) * self mod rhs, over Z.
    fn pseudo_rem(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero());
        let mut rem = self.clone();
        let dl = rhs.leading();
        while !rem.is_zero() && rem.degree() >= rhs.degree() {
            let shift = (rem.degree() - rhs.degree()) as usize;
            let lead = rem.leading();
            rem = rem
                .mul_bigint(&dl)
                .sub(&UniPoly::monomial(lead, shift).mul(rhs));
        }
        rem
    }

    /// Primitive part with positive leading coefficient.
    fn primitive(&self) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.div_bigint_exact(&c)
    }

    /// Gcd in Z[q], normalized primitive with positive leading coefficient,
    /// times the gcd of integer contents.
    pub fn gcd(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs
                .primitive()
                .mul_bigint(&rhs.content().gcd(&self.content()));
        }
        if rhs.is_zero() {
            return self
                .primitive()
                .mul_bigint(&self.content().gcd(&rhs.content()));
        }
        let cont = self.content().gcd(&rhs.content());
        let mut a = self.primitive();
        let mut b = rhs.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive().mul_bigint(&cont)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }
}

/// Dense polynomial in r with UniPoly (Z[q]) coefficients, ascending by r-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        BiPoly::from_uni(UniPoly::one())
    }

    pub fn from_uni(p: UniPoly) -> Self {
        let mut b = BiPoly { coeffs: vec![p] };
        b.trim();
        b
    }

    /// p(q) * r^d.
    pub fn uni_times_rpow(p: UniPoly, d: usize) -> Self {
        if p.is_zero() {
            return BiPoly::zero();
        }
        let mut coeffs = vec![UniPoly::zero(); d + 1];
        coeffs[d] = p;
        BiPoly { coeffs }
    }

    fn trim(&mut self) {
        while let Some(last) = self.coeffs.last() {
            if last.is_zero() {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == UniPoly::one()
    }

    pub fn r_degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeff(&self, d: usize) -> UniPoly {
        self.coeffs.get(d).cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn r_coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn leading(&self) -> UniPoly {
        self.coeffs.last().cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).add(&rhs.coeff(i)));
        }
        let mut b = BiPoly { coeffs };
        b.trim();
        b
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut coeffs = vec![UniPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        let mut b = BiPoly { coeffs };
        b.trim();
        b
    }

    pub fn mul_uni(&self, p: &UniPoly) -> Self {
        if p.is_zero() {
            return BiPoly::zero();
        }
        let mut b = BiPoly {
            coeffs: self.coeffs.iter().map(|c| c.mul(p)).collect(),
        };
        b.trim();
        b
    }

    /// Content in Z[q]: gcd of the r-coefficients.
    pub fn content_q(&self) -> UniPoly {
        let mut g = UniPoly::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    pub fn div_uni_exact(&self, p: &UniPoly) -> Self {
        BiPoly {
            coeffs: self.coeffs.iter().map(|c| c.div_exact(p)).collect(),
        }
    }

    /// Exact division in Z[q][r]; panics if not exact.
    pub fn div_exact(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return BiPoly::zero();
        }
        assert!(!rhs.is_zero(), "division by zero polynomial");
        // Long division in r with exact UniPoly coefficient division.
        let mut rem = self.clone();
        let mut quot =
            vec![UniPoly::zero(); (self.r_degree() - rhs.r_degree() + 1).max(0) as usize];
        let dl = rhs.leading();
        while !rem.is_zero() && rem.r_degree() >= rhs.r_degree() {
            let shift = (rem.r_degree() - rhs.r_degree()) as usize;
            let f = rem.leading().div_exact(&dl);
            quot[shift] = quot[shift].add(&f);
            let term = BiPoly::uni_times_rpow(f, shift);
            rem = rem.sub(&term.mul(rhs));
        }
        assert!(rem.is_zero(), "inexact polynomial division");
        let mut b = BiPoly { coeffs: quot };
        b.trim();
        b
    }

    /// Pseudo-remainder in (Z[q])[r].
    fn pseudo_rem(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero());
        let mut rem = self.clone();
        let dl = rhs.leading();
        while !rem.is_zero() && rem.r_degree() >= rhs.r_degree() {
            let shift = (rem.r_degree() - rhs.r_degree()) as usize;
            let lead = rem.leading();
            rem = rem
                .mul_uni(&dl)
                .sub(&BiPoly::uni_times_rpow(lead, shift).mul(rhs));
        }
        rem
    }

    /// Primitive part w.r.t. Z[q] content, sign-normalized so the leading
    /// coefficient (in r, then q) has a positive leading integer.
    fn primitive(&self) -> Self {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let mut c = self.content_q();
        if self.leading().leading().is_negative() {
            c = c.neg();
        }
        self.div_uni_exact(&c)
    }

    /// Gcd in Z[q][r] (content-times-primitive-part recursion).
    pub fn gcd(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs
                .primitive()
                .mul_uni(&rhs.content_q().gcd(&self.content_q()));
        }
        if rhs.is_zero() {
            return self
                .primitive()
                .mul_uni(&self.content_q().gcd(&rhs.content_q()));
        }
        let cont = self.content_q().gcd(&rhs.content_q());
        let mut a = self.primitive();
        let mut b = rhs.primitive();
        if a.r_degree() < b.r_degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive().mul_uni(&cont)
    }

    pub fn eval(&self, q0: &BigRational, r0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * r0 + c.eval(q0);
        }
        acc
    }

    /// Substitute a rational value for q, leaving r symbolic. Returns the pair
    /// (numerator in Z[r] as BiPoly, positive integer denominator).
    pub fn eval_q(&self, q0: &BigRational) -> (BiPoly, BigInt) {
        let vals: Vec<BigRational> = self.coeffs.iter().map(|c| c.eval(q0)).collect();
        let mut den = BigInt::one();
        for v in &vals {
            den = den.lcm(v.denom());
        }
        let coeffs: Vec<UniPoly> = vals
            .iter()
            .map(|v| UniPoly::constant(v.numer() * (&den / v.denom())))
            .collect();
        let mut b = BiPoly { coeffs };
        b.trim();
        (b, den)
    }

    /// True when this polynomial is u(q) * r^k for some k.
    pub fn is_uni_times_rpow(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
    }
}

/// An element of the field Q(q, r) in canonical reduced form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    num: BiPoly,
    den: BiPoly,
}

/// Errors from scalar construction and evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarError {
    ZeroDenominator,
    Pole { at: String },
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::ZeroDenominator => write!(f, "zero denominator"),
            ScalarError::Pole { at } => write!(f, "pole at {at}"),
        }
    }
}

impl std::error::Error for ScalarError {}

impl Scalar {
    pub fn from_fraction(num: BiPoly, den: BiPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        Ok(Scalar::reduced(num, den))
    }

    fn reduced(num: BiPoly, den: BiPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar {
                num: BiPoly::zero(),
                den: BiPoly::one(),
            };
        }
        if den.is_one() {
            return Scalar { num, den };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        if den.leading().leading().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }

    pub fn zero() -> Self {
        Scalar {
            num: BiPoly::zero(),
            den: BiPoly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            num: BiPoly::one(),
            den: BiPoly::one(),
        }
    }

    pub fn int(n: i64) -> Self {
        Scalar {
            num: BiPoly::from_uni(UniPoly::constant(BigInt::from(n))),
            den: BiPoly::one(),
        }
    }

    pub fn rational(n: i64, d: i64) -> Self {
        assert!(d != 0);
        Scalar::reduced(
            BiPoly::from_uni(UniPoly::constant(BigInt::from(n))),
            BiPoly::from_uni(UniPoly::constant(BigInt::from(d))),
        )
    }

    pub fn from_bigrational(x: &BigRational) -> Self {
        Scalar::reduced(
            BiPoly::from_uni(UniPoly::constant(x.numer().clone())),
            BiPoly::from_uni(UniPoly::constant(x.denom().clone())),
        )
    }

    /// The indeterminate q.
    pub fn q() -> Self {
        Scalar {
            num: BiPoly::from_uni(UniPoly::monomial(BigInt::one(), 1)),
            den: BiPoly::one(),
        }
    }

    /// The indeterminate r.
    pub fn r() -> Self {
        Scalar {
            num: BiPoly::uni_times_rpow(UniPoly::one(), 1),
            den: BiPoly::one(),
        }
    }

    /// q^n for any integer n.
    pub fn q_pow(n: i64) -> Self {
        if n >= 0 {
            Scalar {
                num: BiPoly::from_uni(UniPoly::monomial(BigInt::one(), n as usize)),
                den: BiPoly::one(),
            }
        } else {
            Scalar {
                num: BiPoly::one(),
                den: BiPoly::from_uni(UniPoly::monomial(BigInt::one(), (-n) as usize)),
            }
        }
    }

    /// r^n for any integer n.
    pub fn r_pow(n: i64) -> Self {
        if n >= 0 {
            Scalar {
                num: BiPoly::uni_times_rpow(UniPoly::one(), n as usize),
                den: BiPoly::one(),
            }
        } else {
            Scalar {
                num: BiPoly::one(),
                den: BiPoly::uni_times_rpow(UniPoly::one(), (-n) as usize),
            }
        }
    }

    /// The q-integer n_q = (q^n - q^-n)/(q - q^-1).
    pub fn q_int(n: i64) -> Self {
        let m = n.unsigned_abs();
        // (q^n - q^-n)/(q - q^-1) = q^{1-n} (q^{2n} - 1)/(q^2 - 1)
        //                         = q^{1-n} (q^{2n-2} + q^{2n-4} + ... + 1).
        if m == 0 {
            return Scalar::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (2 * m - 1) as usize];
        for i in 0..m {
            coeffs[(2 * i) as usize] = BigInt::one();
        }
        let s = Scalar {
            num: BiPoly::from_uni(UniPoly::from_coeffs(coeffs)),
            den: BiPoly::one(),
        } * Scalar::q_pow(1 - m as i64);
        if n < 0 {
            -s
        } else {
            s
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn numerator(&self) -> &BiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BiPoly {
        &self.den
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        let mut num = self.den.clone();
        let mut den = self.num.clone();
        if den.leading().leading().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(Scalar { num, den })
    }

    pub fn pow(&self, n: i64) -> Self {
        if n == 0 {
            return Scalar::one();
        }
        let base = if n < 0 {
            self.inv().expect("zero to a negative power")
        } else {
            self.clone()
        };
        let mut acc = Scalar::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc * base.clone();
        }
        acc
    }

    /// True when the denominator is (polynomial in q alone) * r^k; every value
    /// stored in an algebra element must satisfy this.
    pub fn has_factored_denominator(&self) -> bool {
        self.den.is_uni_times_rpow()
    }

    /// Exact evaluation at a rational point (q0, r0).
    pub fn eval(&self, q0: &BigRational, r0: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(q0, r0);
        if d.is_zero() {
            return Err(ScalarError::Pole {
                at: format!("q={q0}, r={r0}"),
            });
        }
        Ok(self.num.eval(q0, r0) / d)
    }

    /// Partial evaluation q := q0, leaving r symbolic.
    pub fn eval_q(&self, q0: &BigRational) -> Result<Scalar, ScalarError> {
        let (dn, dd) = self.den.eval_q(q0);
        if dn.is_zero() {
            return Err(ScalarError::Pole {
                at: format!("q={q0}"),
            });
        }
        let (nn, nd) = self.num.eval_q(q0);
        // num = nn/nd, den = dn/dd  =>  (nn * dd) / (dn * nd)
        Ok(Scalar::reduced(
            nn.mul_uni(&UniPoly::constant(dd)),
            dn.mul_uni(&UniPoly::constant(nd)),
        ))
    }

    /// Split into r-homogeneous parts: pairs (d, s) with s = u(q) * r^d up to a
    /// q-only denominator, summing back to self. Requires the canonical
    /// denominator to be q-only times a power of r.
    pub fn r_degree_parts(&self) -> Vec<(i64, Scalar)> {
        assert!(
            self.has_factored_denominator(),
            "denominator is not (q-polynomial) * r^k: {self}"
        );
        let den_rdeg = self.den.r_degree().max(0);
        let den_q = self.den.coeff(den_rdeg as usize);
        let mut parts = Vec::new();
        for (d, c) in self.num.r_coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let deg = d as i64 - den_rdeg as i64;
            let (num, den) = if deg >= 0 {
                (
                    BiPoly::uni_times_rpow(c.clone(), deg as usize),
                    BiPoly::from_uni(den_q.clone()),
                )
            } else {
                (
                    BiPoly::from_uni(c.clone()),
                    BiPoly::uni_times_rpow(den_q.clone(), (-deg) as usize),
                )
            };
            parts.push((deg, Scalar::reduced(num, den)));
        }
        parts
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        if self.den == rhs.den {
            return Scalar::reduced(self.num.add(&rhs.num), self.den);
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        Scalar::reduced(num, den)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return rhs;
        }
        if rhs.is_one() {
            return self;
        }
        // Cross-reduce before multiplying to keep intermediate degrees small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1);
        let d2 = rhs.den.div_exact(&g1);
        let n2 = rhs.num.div_exact(&g2);
        let d1 = self.den.div_exact(&g2);
        let mut num = n1.mul(&n2);
        let mut den = d1.mul(&d2);
        if den.leading().leading().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self * rhs.inv().expect("division by zero scalar")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", BiPoly::from_uni(self.clone()))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for rd in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[rd];
            for qd in (0..=c.degree().max(0) as usize).rev() {
                let a = c.coeff(qd);
                if a.is_zero() {
                    continue;
                }
                let neg = a.is_negative();
                let abs = a.abs();
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                    first = false;
                } else if neg {
                    write!(f, "-")?;
                } else {
                    write!(f, "+")?;
                }
                let mut factors: Vec<String> = Vec::new();
                if !abs.is_one() || (qd == 0 && rd == 0) {
                    factors.push(abs.to_string());
                }
                if qd == 1 {
                    factors.push("q".into());
                } else if qd > 1 {
                    factors.push(format!("q^{qd}"));
                }
                if rd == 1 {
                    factors.push("r".into());
                } else if rd > 1 {
                    factors.push(format!("r^{rd}"));
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Scalar {
    /// True when the canonical numerator's overall sign is negative.
    pub fn is_negative_lead(&self) -> bool {
        self.num.leading().leading().is_negative()
    }

    /// Printer for coefficient position: parenthesized when composite so that
    /// the output re-parses with `*` binding.
    pub fn coeff_string(&self) -> String {
        let num_terms = count_terms(&self.num);
        if self.den.is_one() {
            if num_terms <= 1 {
                format!("{}", self.num)
            } else {
                format!("({})", self.num)
            }
        } else {
            let n = if num_terms <= 1 {
                format!("{}", self.num)
            } else {
                format!("({})", self.num)
            };
            let d = if count_terms(&self.den) <= 1 {
                format!("{}", self.den)
            } else {
                format!("({})", self.den)
            };
            format!("({n}/{d})")
        }
    }
}

fn count_terms(p: &BiPoly) -> usize {
    p.r_coeffs()
        .iter()
        .map(|c| {
            (0..=c.degree().max(0) as usize)
                .filter(|&d| !c.coeff(d).is_zero())
                .count()
        })
        .sum()
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
