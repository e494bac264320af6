//! Classical (q = 1) vector fields: the commutative oracles.
//!
//! The sphere family carries the bracket {x,y} = z, {y,z} = x, {z,x} = y with
//! infinitesimal rotations X, Y, Z and the first-order combinations
//! cal X = y Z - z Y (cyclic). The sl(2)* family carries {h,b} = 2b,
//! {h,c} = -2c, {b,c} = h with tangent fields B, H, C and
//! cal B = (h B - b H)/2, cal H = b C - c B, cal C = (c H - h C)/2.
//! Everything is an honest derivation given by its values on generators.

use crate::algebra::{AlgebraId, Gen, Monomial, NCPoly};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Formal partial derivative with respect to one generator, on the canonical
/// commutative normal form. Only meaningful on its own for the ambient
/// algebras; on quotients it appears inside tangent derivations.
pub fn formal_partial(g: Gen, f: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero(f.algebra());
    for (m, c) in f.terms() {
        let e = m.exp(g as usize);
        if e == 0 {
            continue;
        }
        let mut exps = [m.exp(0), m.exp(1), m.exp(2), m.exp(3)];
        exps[g as usize] -= 1;
        out.add_term(
            Monomial::from_exps(&exps),
            c.clone() * Scalar::int(e as i64),
        );
    }
    out
}

/// A derivation on a commutative algebra, given by its values on generators.
#[derive(Clone, Debug)]
pub struct Derivation {
    alg: AlgebraId,
    vals: Vec<NCPoly>,
}

impl Derivation {
    pub fn new(alg: AlgebraId, vals: Vec<NCPoly>) -> Result<Self> {
        if vals.len() != alg.arity() {
            return Err(Error::Unsupported(
                "derivation needs one value per generator".into(),
            ));
        }
        for v in &vals {
            if v.algebra() != alg {
                return Err(Error::AlgebraMismatch {
                    expected: alg,
                    found: v.algebra(),
                });
            }
        }
        Ok(Derivation { alg, vals })
    }

    pub fn zero(alg: AlgebraId) -> Self {
        Derivation {
            alg,
            vals: vec![NCPoly::zero(alg); alg.arity()],
        }
    }

    pub fn algebra(&self) -> AlgebraId {
        self.alg
    }

    pub fn value_on(&self, g: Gen) -> &NCPoly {
        &self.vals[g as usize]
    }

    /// Leibnitz application: sum_g vals[g] * d_g(f), reduced.
    pub fn apply(&self, f: &NCPoly) -> Result<NCPoly> {
        if f.algebra() != self.alg {
            return Err(Error::AlgebraMismatch {
                expected: self.alg,
                found: f.algebra(),
            });
        }
        let mut out = NCPoly::zero(self.alg);
        for (g, v) in self.vals.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            out = out.add(&v.mul(&formal_partial(g as Gen, f))?)?;
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Derivation) -> Result<Derivation> {
        let vals = self
            .vals
            .iter()
            .zip(&rhs.vals)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(self.alg, vals)
    }

    pub fn sub(&self, rhs: &Derivation) -> Result<Derivation> {
        self.add(&rhs.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Derivation {
        Derivation {
            alg: self.alg,
            vals: self.vals.iter().map(|v| v.scale(s)).collect(),
        }
    }

    /// Function multiple p * D (still a derivation).
    pub fn mul_fn(&self, p: &NCPoly) -> Result<Derivation> {
        let vals = self
            .vals
            .iter()
            .map(|v| p.mul(v))
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(self.alg, vals)
    }
}

/// The single-generator partial as a derivation (ambient algebras only).
pub fn partial_derivation(alg: AlgebraId, g: Gen) -> Derivation {
    let mut vals = vec![NCPoly::zero(alg); alg.arity()];
    vals[g as usize] = NCPoly::one(alg);
    Derivation { alg, vals }
}

/// The Euler field sum_g g d_g, i.e. r d_r on the ambient spaces.
pub fn euler(alg: AlgebraId) -> Derivation {
    let vals = (0..alg.arity())
        .map(|g| NCPoly::generator(alg, g as Gen))
        .collect();
    Derivation { alg, vals }
}

/// Infinitesimal rotations on the x, y, z family: X = Pois_x = z d_y - y d_z
/// and cyclic.
pub fn rotation_fields(alg: AlgebraId) -> Result<[Derivation; 3]> {
    if !matches!(alg, AlgebraId::ClassicalSo3 | AlgebraId::ClassicalSphere) {
        return Err(Error::Unsupported(format!(
            "rotation fields live on the x,y,z family, not {alg:?}"
        )));
    }
    let gen = |g: Gen| NCPoly::generator(alg, g);
    let zero = NCPoly::zero(alg);
    let x = Derivation::new(alg, vec![zero.clone(), gen(2), gen(1).neg()])?;
    let y = Derivation::new(alg, vec![gen(2).neg(), zero.clone(), gen(0)])?;
    let z = Derivation::new(alg, vec![gen(1), gen(0).neg(), zero])?;
    Ok([x, y, z])
}

/// cal X = y Z - z Y, cal Y = z X - x Z, cal Z = x Y - y X.
pub fn rotation_cal_fields(alg: AlgebraId) -> Result<[Derivation; 3]> {
    let [x, y, z] = rotation_fields(alg)?;
    let gen = |g: Gen| NCPoly::generator(alg, g);
    let cx = z.mul_fn(&gen(1))?.sub(&y.mul_fn(&gen(2))?)?;
    let cy = x.mul_fn(&gen(2))?.sub(&z.mul_fn(&gen(0))?)?;
    let cz = y.mul_fn(&gen(0))?.sub(&x.mul_fn(&gen(1))?)?;
    Ok([cx, cy, cz])
}

/// Tangent Poisson fields on the b, h, c family:
/// B = h d_c - 2b d_h, H = 2b d_b - 2c d_c, C = -h d_b + 2c d_h.
pub fn sl2_fields(alg: AlgebraId) -> Result<[Derivation; 3]> {
    if !matches!(
        alg,
        AlgebraId::ClassicalSl2 | AlgebraId::ClassicalHyperboloid
    ) {
        return Err(Error::Unsupported(format!(
            "sl(2) tangent fields live on the b,h,c family, not {alg:?}"
        )));
    }
    let gen = |g: Gen| NCPoly::generator(alg, g);
    let zero = NCPoly::zero(alg);
    let two = Scalar::int(2);
    let b = Derivation::new(alg, vec![zero.clone(), gen(0).scale(&-two.clone()), gen(1)])?;
    let h = Derivation::new(
        alg,
        vec![
            gen(0).scale(&two),
            zero.clone(),
            gen(2).scale(&-two.clone()),
        ],
    )?;
    let c = Derivation::new(alg, vec![gen(1).neg(), gen(2).scale(&two), zero])?;
    Ok([b, h, c])
}

/// cal B = (h B - b H)/2, cal H = b C - c B, cal C = (c H - h C)/2.
pub fn sl2_cal_fields(alg: AlgebraId) -> Result<[Derivation; 3]> {
    let [b, h, c] = sl2_fields(alg)?;
    let gen = |g: Gen| NCPoly::generator(alg, g);
    let half = Scalar::rational(1, 2);
    let cb = b.mul_fn(&gen(1))?.sub(&h.mul_fn(&gen(0))?)?.scale(&half);
    let ch = c.mul_fn(&gen(0))?.sub(&b.mul_fn(&gen(2))?)?;
    let cc = h.mul_fn(&gen(2))?.sub(&c.mul_fn(&gen(1))?)?.scale(&half);
    Ok([cb, ch, cc])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomials_of_degree;
    use crate::algebra::AlgebraId::*;

    fn all_monomials(alg: AlgebraId, max_degree: u32) -> Vec<NCPoly> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            for m in monomials_of_degree(alg, d) {
                let mut f = NCPoly::zero(alg);
                f.add_term(m, Scalar::one());
                out.push(f);
            }
        }
        out
    }

    #[test]
    fn rotation_fields_are_poisson_operators() {
        let [x, _, _] = rotation_fields(ClassicalSo3).unwrap();
        // X(y) = z, X(z) = -y
        let y = NCPoly::generator_named(ClassicalSo3, "y").unwrap();
        let z = NCPoly::generator_named(ClassicalSo3, "z").unwrap();
        assert_eq!(x.apply(&y).unwrap(), z);
        assert_eq!(x.apply(&z).unwrap(), y.neg());
    }

    #[test]
    fn sphere_tangency() {
        // x X + y Y + z Z = 0 as an operator identity.
        let alg = ClassicalSo3;
        let [x, y, z] = rotation_fields(alg).unwrap();
        let gen = |g: Gen| NCPoly::generator(alg, g);
        let total = x
            .mul_fn(&gen(0))
            .unwrap()
            .add(&y.mul_fn(&gen(1)).unwrap())
            .unwrap()
            .add(&z.mul_fn(&gen(2)).unwrap())
            .unwrap();
        for f in all_monomials(alg, 4) {
            assert!(total.apply(&f).unwrap().is_zero());
        }
    }

    #[test]
    fn hyperboloid_tangency() {
        // c B + h H/2 + b C = 0 as an operator identity.
        let alg = ClassicalSl2;
        let [b, h, c] = sl2_fields(alg).unwrap();
        let gen = |g: Gen| NCPoly::generator(alg, g);
        let total = b
            .mul_fn(&gen(2))
            .unwrap()
            .add(&h.mul_fn(&gen(1)).unwrap().scale(&Scalar::rational(1, 2)))
            .unwrap()
            .add(&c.mul_fn(&gen(0)).unwrap())
            .unwrap();
        for f in all_monomials(alg, 4) {
            assert!(total.apply(&f).unwrap().is_zero());
        }
    }

    #[test]
    fn fields_descend_to_quotients() {
        // Tangent fields preserve the defining relation, so applying them on
        // the quotient basis is well defined; spot-check X on the sphere:
        // X(x^2 + y^2 + z^2) = 0 upstairs.
        let [x, y, z] = rotation_fields(ClassicalSo3).unwrap();
        let r2 = crate::rmatrix::casimir(ClassicalSo3);
        for d in [x, y, z] {
            assert!(d.apply(&r2).unwrap().is_zero());
        }
        let [b, h, c] = sl2_fields(ClassicalSl2).unwrap();
        let cas = crate::rmatrix::casimir(ClassicalSl2);
        for d in [b, h, c] {
            assert!(d.apply(&cas).unwrap().is_zero());
        }
    }

    #[test]
    fn euler_counts_degree() {
        let e = euler(ClassicalSo3);
        for f in all_monomials(ClassicalSo3, 3) {
            let deg = f.max_degree();
            assert_eq!(e.apply(&f).unwrap(), f.scale(&Scalar::int(deg as i64)));
        }
    }

    /// Radial realizations of the partials through the tangent fields:
    /// Cas d_c = cal B + b E, 2 Cas d_h = cal H + h E, Cas d_b = cal C + c E,
    /// with E the Euler field.
    #[test]
    fn bra_realization_relations() {
        let alg = ClassicalSl2;
        let [cb, ch, cc] = sl2_cal_fields(alg).unwrap();
        let e = euler(alg);
        let cas = crate::rmatrix::casimir(alg);
        let gen = |g: Gen| NCPoly::generator(alg, g);
        for f in all_monomials(alg, 4) {
            let lhs = cas.mul(&formal_partial(2, &f)).unwrap();
            let rhs = cb
                .apply(&f)
                .unwrap()
                .add(&gen(0).mul(&e.apply(&f).unwrap()).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "d_c realization on {f}");
            let lhs = cas
                .mul(&formal_partial(1, &f))
                .unwrap()
                .scale(&Scalar::int(2));
            let rhs = ch
                .apply(&f)
                .unwrap()
                .add(&gen(1).mul(&e.apply(&f).unwrap()).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "d_h realization on {f}");
            let lhs = cas.mul(&formal_partial(0, &f)).unwrap();
            let rhs = cc
                .apply(&f)
                .unwrap()
                .add(&gen(2).mul(&e.apply(&f).unwrap()).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "d_b realization on {f}");
        }
    }
}
