//! The 4x4 Hecke symmetry behind the q-Minkowski algebra and everything built
//! from it: the skew-inverse, the B and C operators, the quantum trace, the
//! Casimir elements, the covariant pairing, and the split-Casimir matrix with
//! its Cayley-Hamilton relation.
//!
//! Conventions: a braiding R acts on V (x) V with basis
//! {x1(x)x1, x1(x)x2, x2(x)x1, x2(x)x2}; the stored matrix has
//! M[(k,l), (i,j)] = R_{ij}^{kl}, the coefficient of x_k (x) x_l in
//! R(x_i (x) x_j). The skew-inverse solves
//! sum_{a,b} R_{ia}^{kb} Psi_{bj}^{al} = delta_i^l delta_j^k.

use crate::algebra::{AlgebraId, Monomial, NCPoly};
use crate::fields::adjoint_matrix_base;
use crate::linalg::{kron, Mat};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// A scalar braiding on the 4-dimensional space V (x) V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Braiding {
    m: Mat,
}

fn idx(i: usize, j: usize) -> usize {
    2 * i + j
}

impl Braiding {
    pub fn from_mat(m: Mat) -> Result<Self> {
        if m.rows != 4 || m.cols != 4 {
            return Err(Error::Unsupported("braiding must be 4x4".into()));
        }
        Ok(Braiding { m })
    }

    /// The Hecke symmetry of the q-Minkowski algebra: the image of the
    /// universal R-matrix of U_q(sl(2)) composed with the flip.
    pub fn standard() -> Self {
        let mut m = Mat::zero(4, 4);
        m[(idx(0, 0), idx(0, 0))] = Scalar::q();
        m[(idx(0, 1), idx(0, 1))] = Scalar::q() - Scalar::q_pow(-1);
        m[(idx(1, 0), idx(0, 1))] = Scalar::one();
        m[(idx(0, 1), idx(1, 0))] = Scalar::one();
        m[(idx(1, 1), idx(1, 1))] = Scalar::q();
        Braiding { m }
    }

    /// The plain flip x_i (x) x_j -> x_j (x) x_i (the q = 1 limit).
    pub fn flip() -> Self {
        let mut m = Mat::zero(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                m[(idx(j, i), idx(i, j))] = Scalar::one();
            }
        }
        Braiding { m }
    }

    /// R_{ij}^{kl}.
    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> &Scalar {
        &self.m[(idx(k, l), idx(i, j))]
    }

    pub fn mat(&self) -> &Mat {
        &self.m
    }

    pub fn perturbed(&self, i: usize, j: usize, k: usize, l: usize, delta: Scalar) -> Self {
        let mut m = self.m.clone();
        m[(idx(k, l), idx(i, j))] = m[(idx(k, l), idx(i, j))].clone() + delta;
        Braiding { m }
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        Braiding { m: self.m.scale(s) }
    }
}

/// Quantum Yang-Baxter equation: R12 R23 R12 = R23 R12 R23 on V^(x)3, exactly.
pub fn check_ybe(r: &Braiding) -> bool {
    let i2 = Mat::identity(2);
    let r12 = kron(&r.m, &i2);
    let r23 = kron(&i2, &r.m);
    let lhs = r12.mul(&r23).mul(&r12);
    let rhs = r23.mul(&r12).mul(&r23);
    lhs == rhs
}

/// Hecke condition (qI - R)(q^-1 I + R) = 0, exactly.
pub fn check_hecke(r: &Braiding, q: &Scalar) -> bool {
    let i4 = Mat::identity(4);
    let lhs = i4.scale(q).sub(&r.m);
    let rhs = i4.scale(&q.inv().expect("nonzero q")).add(&r.m);
    lhs.mul(&rhs).is_zero()
}

/// Solve the skew-inverse relation for Psi. Errors when the defining linear
/// system is singular (the braiding is not skew-invertible).
pub fn skew_inverse(r: &Braiding) -> Result<Braiding> {
    // Unknowns Psi_{bj}^{al} indexed by column = 4*idx(b,j) + idx(a,l).
    let mut sys = Mat::zero(16, 16);
    let mut rhs = vec![Scalar::zero(); 16];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let row = 4 * idx(i, j) + idx(k, l);
                    for a in 0..2 {
                        for b in 0..2 {
                            let coeff = r.entry(i, a, k, b).clone();
                            if coeff.is_zero() {
                                continue;
                            }
                            let col = 4 * idx(b, j) + idx(a, l);
                            sys[(row, col)] = sys[(row, col)].clone() + coeff;
                        }
                    }
                    if i == l && j == k {
                        rhs[row] = Scalar::one();
                    }
                }
            }
        }
    }
    let sol = sys
        .solve(&rhs)
        .ok_or_else(|| Error::Singular("skew-inverse system".into()))?;
    let mut m = Mat::zero(4, 4);
    for b in 0..2 {
        for j in 0..2 {
            for a in 0..2 {
                for l in 0..2 {
                    m[(idx(a, l), idx(b, j))] = sol[4 * idx(b, j) + idx(a, l)].clone();
                }
            }
        }
    }
    let psi = Braiding { m };
    debug_assert!(verify_skew_inverse(r, &psi));
    Ok(psi)
}

/// Substitute Psi back into the defining relation.
pub fn verify_skew_inverse(r: &Braiding, psi: &Braiding) -> bool {
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let mut acc = Scalar::zero();
                    for a in 0..2 {
                        for b in 0..2 {
                            acc = acc + r.entry(i, a, k, b).clone() * psi.entry(b, j, a, l).clone();
                        }
                    }
                    let expect = if i == l && j == k {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    };
                    if acc != expect {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Partial traces of the skew-inverse: B = Tr_1 Psi (B_i^j = Psi_{ai}^{aj}),
/// C = Tr_2 Psi (C_i^j = Psi_{ia}^{ja}). Returned as 2x2 matrices with
/// entry (i, j) = X_i^j.
pub fn bc_operators(psi: &Braiding) -> (Mat, Mat) {
    let mut b = Mat::zero(2, 2);
    let mut c = Mat::zero(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            for a in 0..2 {
                b[(i, j)] = b[(i, j)].clone() + psi.entry(a, i, a, j).clone();
                c[(i, j)] = c[(i, j)].clone() + psi.entry(i, a, j, a).clone();
            }
        }
    }
    (b, c)
}

/// A square matrix with entries from one algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgMatrix {
    alg: AlgebraId,
    pub n: usize,
    entries: Vec<NCPoly>,
}

impl AlgMatrix {
    pub fn zero(alg: AlgebraId, n: usize) -> Self {
        AlgMatrix {
            alg,
            n,
            entries: vec![NCPoly::zero(alg); n * n],
        }
    }

    pub fn identity(alg: AlgebraId, n: usize) -> Self {
        let mut m = AlgMatrix::zero(alg, n);
        for i in 0..n {
            *m.at_mut(i, i) = NCPoly::one(alg);
        }
        m
    }

    pub fn from_entries(alg: AlgebraId, n: usize, entries: Vec<NCPoly>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Unsupported("entry count mismatch".into()));
        }
        for e in &entries {
            if e.algebra() != alg {
                return Err(Error::AlgebraMismatch {
                    expected: alg,
                    found: e.algebra(),
                });
            }
        }
        Ok(AlgMatrix { alg, n, entries })
    }

    pub fn algebra(&self) -> AlgebraId {
        self.alg
    }

    pub fn at(&self, i: usize, j: usize) -> &NCPoly {
        &self.entries[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut NCPoly {
        &mut self.entries[i * self.n + j]
    }

    pub fn transpose(&self) -> Self {
        let mut out = AlgMatrix::zero(self.alg, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &AlgMatrix) -> Result<AlgMatrix> {
        if self.alg != rhs.alg || self.n != rhs.n {
            return Err(Error::Unsupported("matrix shape/algebra mismatch".into()));
        }
        let mut out = AlgMatrix::zero(self.alg, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = NCPoly::zero(self.alg);
                for k in 0..self.n {
                    acc = acc.add(&self.at(i, k).mul(rhs.at(k, j))?)?;
                }
                *out.at_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &AlgMatrix) -> Result<AlgMatrix> {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                *out.at_mut(i, j) = out.at(i, j).add(rhs.at(i, j))?;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &AlgMatrix) -> Result<AlgMatrix> {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                *out.at_mut(i, j) = out.at(i, j).sub(rhs.at(i, j))?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> AlgMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.scale(s);
        }
        out
    }

    /// Left-multiply every entry by an algebra element.
    pub fn scale_poly(&self, p: &NCPoly) -> Result<AlgMatrix> {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = p.mul(e)?;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Matrix-column product over the algebra.
    pub fn mul_col(&self, v: &[NCPoly]) -> Result<Vec<NCPoly>> {
        if v.len() != self.n {
            return Err(Error::Unsupported("column length mismatch".into()));
        }
        let mut out = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut acc = NCPoly::zero(self.alg);
            for j in 0..self.n {
                acc = acc.add(&self.at(i, j).mul(&v[j])?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Retag plus coefficient evaluation q := 1, for classical comparisons.
    pub fn eval_q1(&self, target: AlgebraId) -> Result<AlgMatrix> {
        let one = num_rational::BigRational::from_integer(1.into());
        let mut out = AlgMatrix::zero(target, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                *out.at_mut(i, j) = self.at(i, j).eval_q(&one)?.retag(target)?;
            }
        }
        Ok(out)
    }
}

impl std::fmt::Display for AlgMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                writeln!(f, "[{i}][{j}] {}", self.at(i, j))?;
            }
        }
        Ok(())
    }
}

/// The generator matrix L = ((a, b), (c, d)) of the q-Minkowski algebra, with
/// a = (l + q h)/2_q and d = (l - q^-1 h)/2_q.
pub fn l_matrix() -> AlgMatrix {
    let alg = AlgebraId::R4;
    let two_q_inv = Scalar::q_int(2).inv().unwrap();
    let h = NCPoly::generator_named(alg, "h").unwrap();
    let l = NCPoly::generator_named(alg, "l").unwrap();
    let a = l
        .scale(&two_q_inv)
        .add(&h.scale(&(Scalar::q() * two_q_inv.clone())))
        .unwrap();
    let d = l
        .scale(&two_q_inv)
        .sub(&h.scale(&(Scalar::q_pow(-1) * two_q_inv.clone())))
        .unwrap();
    AlgMatrix::from_entries(
        alg,
        2,
        vec![
            a,
            NCPoly::generator_named(alg, "b").unwrap(),
            NCPoly::generator_named(alg, "c").unwrap(),
            d,
        ],
    )
    .unwrap()
}

/// The C operator of the standard Hecke symmetry, diag(q^-3, q^-1).
pub fn standard_c_operator() -> Mat {
    let psi = skew_inverse(&Braiding::standard()).expect("standard braiding is skew-invertible");
    bc_operators(&psi).1
}

/// Quantum trace Tr_q M = Tr(C M) of a 2x2 matrix over the q-Minkowski
/// algebra.
pub fn quantum_trace(m: &AlgMatrix) -> Result<NCPoly> {
    if m.n != 2 {
        return Err(Error::Unsupported(
            "quantum trace expects a 2x2 matrix".into(),
        ));
    }
    let c = standard_c_operator();
    let mut acc = NCPoly::zero(m.algebra());
    for i in 0..2 {
        for j in 0..2 {
            if c[(i, j)].is_zero() {
                continue;
            }
            acc = acc.add(&m.at(j, i).scale(&c[(i, j)]))?;
        }
    }
    Ok(acc)
}

/// The braided Casimir element of the algebra, in normal form.
///
/// R3 carries Cas_sl = q^-1 bc + h^2/2_q + q cb; R4 carries
/// Cas_gl = q^-1 bc + q cb + (h^2 + l^2)/2_q. The classical tags get the
/// q = 1 images, and the x,y,z family gets x^2 + y^2 + z^2.
pub fn casimir(alg: AlgebraId) -> NCPoly {
    use crate::algebra::{normal_form, WordTerm};
    let t = |c: Scalar, w: &[u8]| WordTerm {
        coeff: c,
        word: w.to_vec(),
    };
    let two_q_inv = Scalar::q_int(2).inv().unwrap();
    match alg {
        AlgebraId::R3 | AlgebraId::H2 => normal_form(
            alg,
            &vec![
                t(Scalar::q_pow(-1), &[0, 2]),
                t(two_q_inv, &[1, 1]),
                t(Scalar::q(), &[2, 0]),
            ],
        ),
        AlgebraId::R4 => normal_form(
            alg,
            &vec![
                t(Scalar::q_pow(-1), &[0, 2]),
                t(Scalar::q(), &[2, 0]),
                t(two_q_inv.clone(), &[1, 1]),
                t(two_q_inv, &[3, 3]),
            ],
        ),
        AlgebraId::ClassicalSl2 | AlgebraId::ClassicalHyperboloid => normal_form(
            alg,
            &vec![
                t(Scalar::one(), &[0, 2]),
                t(Scalar::rational(1, 2), &[1, 1]),
                t(Scalar::one(), &[2, 0]),
            ],
        ),
        AlgebraId::ClassicalR4 => normal_form(
            alg,
            &vec![
                t(Scalar::one(), &[0, 2]),
                t(Scalar::one(), &[2, 0]),
                t(Scalar::rational(1, 2), &[1, 1]),
                t(Scalar::rational(1, 2), &[3, 3]),
            ],
        ),
        AlgebraId::ClassicalSo3 | AlgebraId::ClassicalSphere => normal_form(
            alg,
            &vec![
                t(Scalar::one(), &[0, 0]),
                t(Scalar::one(), &[1, 1]),
                t(Scalar::one(), &[2, 2]),
            ],
        ),
        AlgebraId::ClassicalMinkowski => {
            panic!("no distinguished Casimir is used on the Minkowski oracle")
        }
    }
}

/// The covariant pairing on the span of the generators, given by the B
/// operator through < l_i^j, l_k^m > = B_k^j delta_i^m. In the b, h, c, l
/// basis the nonzero values are <b,c> = q^-3, <c,b> = q^-1,
/// <h,h> = <l,l> = q^-2 2_q, <h,l> = <l,h> = 0.
pub fn pairing(u: &NCPoly, v: &NCPoly) -> Result<Scalar> {
    let coords = |p: &NCPoly| -> Result<[Scalar; 4]> {
        let mut out = [
            Scalar::zero(),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::zero(),
        ];
        for (m, c) in p.terms() {
            if m.degree() != 1 {
                return Err(Error::NonLinear);
            }
            for g in 0..4 {
                if m.exp(g) == 1 {
                    out[g] = out[g].clone() + c.clone();
                }
            }
        }
        Ok(out)
    };
    let ub = coords(u)?;
    let vb = coords(v)?;
    // Convert (b, h, c, l) to (a, b, c, d): h = a - d, l = q^-1 a + q d.
    let to_abcd = |x: &[Scalar; 4]| -> [Scalar; 4] {
        let a = x[1].clone() + Scalar::q_pow(-1) * x[3].clone();
        let d = -x[1].clone() + Scalar::q() * x[3].clone();
        [a, x[0].clone(), x[2].clone(), d]
    };
    let ua = to_abcd(&ub);
    let va = to_abcd(&vb);
    // <a,a> = q^-1, <b,c> = q^-3, <c,b> = q^-1, <d,d> = q^-3.
    Ok(ua[0].clone() * va[0].clone() * Scalar::q_pow(-1)
        + ua[1].clone() * va[2].clone() * Scalar::q_pow(-3)
        + ua[2].clone() * va[1].clone() * Scalar::q_pow(-1)
        + ua[3].clone() * va[3].clone() * Scalar::q_pow(-3))
}

/// The matrix w^-1 pi_2(Cas_sl): the split Casimir with the representation
/// pi(x) = P^-1 ad(x) P applied to its second leg. With P = I it equals
///
///   (1/2_q) [ q^2 h, -2_q q c, 0; -b, (q^2-1) h, q^2 c; 0, 2_q q b, -h ].
pub fn split_casimir_matrix(p: &Mat, alg: AlgebraId) -> Result<AlgMatrix> {
    if !matches!(alg, AlgebraId::R3 | AlgebraId::H2) {
        return Err(Error::Unsupported(
            "split Casimir lives on the quantum three-generator algebras; \
             evaluate q = 1 for the classical matrix"
                .into(),
        ));
    }
    let pinv = p
        .inverse()
        .ok_or_else(|| Error::Singular("P is not invertible".into()))?;
    let conj = |m: &Mat| pinv.mul(m).mul(p);
    let (bq, hq, cq) = adjoint_matrix_base();
    let (bq, hq, cq) = (conj(&bq), conj(&hq), conj(&cq));
    let b = NCPoly::generator_named(alg, "b")?;
    let h = NCPoly::generator_named(alg, "h")?;
    let c = NCPoly::generator_named(alg, "c")?;
    let two_q_inv = Scalar::q_int(2).inv().unwrap();
    let mut out = AlgMatrix::zero(alg, 3);
    for i in 0..3 {
        for j in 0..3 {
            let e = b
                .scale(&(Scalar::q_pow(-1) * cq[(i, j)].clone()))
                .add(&h.scale(&(two_q_inv.clone() * hq[(i, j)].clone())))?
                .add(&c.scale(&(Scalar::q() * bq[(i, j)].clone())))?;
            *out.at_mut(i, j) = e;
        }
    }
    Ok(out)
}

/// The matrix L = (w^-1 pi_2(Cas_sl))^t entering the Cayley-Hamilton relation.
pub fn split_casimir_l(p: &Mat, alg: AlgebraId) -> Result<AlgMatrix> {
    Ok(split_casimir_matrix(p, alg)?.transpose())
}

/// Result of solving target = alpha L^2 + beta L + gamma I for central
/// scalar-coefficient combinations.
#[derive(Clone, Debug)]
pub struct PolySearch {
    pub solvable: bool,
    pub solution: Option<(Scalar, Scalar, Scalar)>,
    /// A nonzero residual entry when unsolvable, as (row, col, best residual).
    pub witness: Option<String>,
}

/// Solve target = alpha L^2 + beta L + gamma I with alpha, beta, gamma in
/// Q(q, r); reports the outcome instead of asserting it.
pub fn matrix_poly_search(target: &AlgMatrix, l: &AlgMatrix) -> Result<PolySearch> {
    let l2 = l.mul(l)?;
    let id = AlgMatrix::identity(l.algebra(), l.n);
    let sol = solve_central_combination(target, &[&l2, l, &id], &[])?;
    match sol {
        Some(coeffs) => {
            let mut c = coeffs.into_iter();
            let (a, b, g) = (c.next().unwrap(), c.next().unwrap(), c.next().unwrap());
            // Re-substitute to confirm exactly.
            let recon = l2.scale(&a).add(&l.scale(&b))?.add(&id.scale(&g))?;
            let residual = target.sub(&recon)?;
            if residual.is_zero() {
                Ok(PolySearch {
                    solvable: true,
                    solution: Some((a, b, g)),
                    witness: None,
                })
            } else {
                Ok(PolySearch {
                    solvable: false,
                    solution: None,
                    witness: Some(format!("re-substitution residual {residual}")),
                })
            }
        }
        None => Ok(PolySearch {
            solvable: false,
            solution: None,
            witness: Some("linear system inconsistent".into()),
        }),
    }
}

/// Solve target = sum_i x_i * basis_i + sum_j y_j * (central_j * basis2_j)
/// entrywise over the algebra; the generic helper behind the CH relation.
/// `mats` are matrices multiplied by scalar unknowns; `poly_mats` are pairs
/// (central element, matrix) multiplied by scalar unknowns.
fn solve_central_combination(
    target: &AlgMatrix,
    mats: &[&AlgMatrix],
    poly_mats: &[(&NCPoly, &AlgMatrix)],
) -> Result<Option<Vec<Scalar>>> {
    let n = target.n;
    let alg = target.algebra();
    // Column polynomials per unknown, per entry.
    let mut columns: Vec<AlgMatrix> = Vec::new();
    for m in mats {
        columns.push((*m).clone());
    }
    for (z, m) in poly_mats {
        let mut zm = AlgMatrix::zero(alg, n);
        for i in 0..n {
            for j in 0..n {
                *zm.at_mut(i, j) = z.mul(m.at(i, j))?;
            }
        }
        columns.push(zm);
    }
    // Collect all monomials appearing anywhere.
    let mut monos: std::collections::BTreeSet<Monomial> = std::collections::BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            for (m, _) in target.at(i, j).terms() {
                monos.insert(*m);
            }
            for col in &columns {
                for (m, _) in col.at(i, j).terms() {
                    monos.insert(*m);
                }
            }
        }
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for mono in &monos {
                let row: Vec<Scalar> = columns.iter().map(|c| c.at(i, j).coeff(mono)).collect();
                if row.iter().all(|s| s.is_zero()) && target.at(i, j).coeff(mono).is_zero() {
                    continue;
                }
                rows.push(row);
                rhs.push(target.at(i, j).coeff(mono));
            }
        }
    }
    if rows.is_empty() {
        return Ok(Some(vec![Scalar::zero(); columns.len()]));
    }
    let sys = Mat::from_rows(rows);
    Ok(sys.solve(&rhs))
}

/// Search for central scalars with ebar = alpha L^2 + beta L + gamma I on the
/// q-hyperboloid, L the transposed split-Casimir matrix built from P. The
/// outcome is reported, never asserted: no P making the search succeed is
/// known, and the identity matrix does not.
pub fn idempotent_poly_search(p: &Mat) -> Result<PolySearch> {
    let alg = AlgebraId::H2;
    let l = split_casimir_l(p, alg)?;
    let (ebar, _) = crate::laplace::idempotent(alg)?;
    matrix_poly_search(&ebar, &l)
}

/// Central coefficients (c2, c1, c0) with L^3 = c2 L^2 + c1 L + c0 I, found by
/// an exact linear solve over {1, Cas}-multiples and confirmed by
/// re-substitution. Errors when no central solution exists.
pub fn ch_relation(l: &AlgMatrix) -> Result<(NCPoly, NCPoly, NCPoly)> {
    let alg = l.algebra();
    let l2 = l.mul(l)?;
    let l3 = l2.mul(l)?;
    let id = AlgMatrix::identity(alg, l.n);
    let cas = casimir(alg);
    let sol =
        solve_central_combination(&l3, &[&l2, l, &id], &[(&cas, &l2), (&cas, l), (&cas, &id)])?
            .ok_or_else(|| Error::Singular("no central Cayley-Hamilton solution".into()))?;
    let mk = |x: &Scalar, y: &Scalar| -> Result<NCPoly> {
        NCPoly::constant(alg, x.clone()).add(&cas.scale(y))
    };
    let c2 = mk(&sol[0], &sol[3])?;
    let c1 = mk(&sol[1], &sol[4])?;
    let c0 = mk(&sol[2], &sol[5])?;
    // Exact re-substitution.
    let mut recon = AlgMatrix::zero(alg, l.n);
    for (coeff, mat) in [(&c2, &l2), (&c1, l), (&c0, &id)] {
        for i in 0..l.n {
            for j in 0..l.n {
                *recon.at_mut(i, j) = recon.at(i, j).add(&coeff.mul(mat.at(i, j))?)?;
            }
        }
    }
    let residual = l3.sub(&recon)?;
    if !residual.is_zero() {
        return Err(Error::Singular(format!(
            "Cayley-Hamilton residual nonzero: {residual}"
        )));
    }
    Ok((c2, c1, c0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraId::*;

    #[test]
    fn ybe_holds_for_standard_and_flip() {
        assert!(check_ybe(&Braiding::standard()));
        assert!(check_ybe(&Braiding::flip()));
        let bad = Braiding::standard().perturbed(0, 1, 1, 0, Scalar::one());
        assert!(!check_ybe(&bad));
    }

    #[test]
    fn hecke_condition() {
        assert!(check_hecke(&Braiding::standard(), &Scalar::q()));
        assert!(check_hecke(&Braiding::flip(), &Scalar::one()));
        let scaled = Braiding::standard().scaled(&Scalar::q());
        assert!(!check_hecke(&scaled, &Scalar::q()));
    }

    #[test]
    fn skew_inverse_of_flip_is_flip() {
        let psi = skew_inverse(&Braiding::flip()).unwrap();
        assert_eq!(psi, Braiding::flip());
        assert!(verify_skew_inverse(&Braiding::flip(), &psi));
    }

    #[test]
    fn skew_inverse_standard_verifies() {
        let r = Braiding::standard();
        let psi = skew_inverse(&r).unwrap();
        assert!(verify_skew_inverse(&r, &psi));
    }

    #[test]
    fn rank_deficient_not_skew_invertible() {
        // The zero braiding has no skew-inverse.
        let z = Braiding::from_mat(Mat::zero(4, 4)).unwrap();
        assert!(matches!(skew_inverse(&z), Err(Error::Singular(_))));
    }

    #[test]
    fn c_operator_matches_quoted_value() {
        let (b, c) = bc_operators(&skew_inverse(&Braiding::standard()).unwrap());
        let mut expect_c = Mat::zero(2, 2);
        expect_c[(0, 0)] = Scalar::q_pow(-3);
        expect_c[(1, 1)] = Scalar::q_pow(-1);
        assert_eq!(c, expect_c);
        // B is cross-checked through the pairing table: <b,c> = B_2^2 = q^-3,
        // <c,b> = B_1^1 = q^-1, off-diagonal zero.
        let mut expect_b = Mat::zero(2, 2);
        expect_b[(0, 0)] = Scalar::q_pow(-1);
        expect_b[(1, 1)] = Scalar::q_pow(-3);
        assert_eq!(b, expect_b);
    }

    #[test]
    fn flip_bc_are_identity() {
        let (b, c) = bc_operators(&skew_inverse(&Braiding::flip()).unwrap());
        assert_eq!(b, Mat::identity(2));
        assert_eq!(c, Mat::identity(2));
    }

    #[test]
    fn quantum_trace_of_l_gives_l() {
        let l = l_matrix();
        let tr = quantum_trace(&l).unwrap();
        let lgen = NCPoly::generator_named(R4, "l").unwrap();
        assert_eq!(tr.scale(&Scalar::q_pow(2)), lgen);
    }

    #[test]
    fn quantum_trace_of_identity() {
        let id = AlgMatrix::identity(R4, 2);
        let tr = quantum_trace(&id).unwrap();
        let expect = NCPoly::constant(R4, Scalar::q_pow(-2) * Scalar::q_int(2));
        assert_eq!(tr, expect);
    }

    #[test]
    fn trace_of_l_squared_is_casimir() {
        let l = l_matrix();
        let l2 = l.mul(&l).unwrap();
        let tr = quantum_trace(&l2).unwrap().scale(&Scalar::q_pow(2));
        assert_eq!(tr, casimir(R4));
    }

    #[test]
    fn casimir_normal_forms() {
        // Cas_sl normal form: 2_q bc + q^3/(q^2+1) h^2.
        let cas = casimir(R3);
        assert_eq!(
            cas.coeff(&Monomial::from_exps(&[1, 0, 1])),
            Scalar::q_int(2)
        );
        assert_eq!(
            cas.coeff(&Monomial::from_exps(&[0, 2, 0])),
            Scalar::q().pow(3) / (Scalar::q().pow(2) + Scalar::one())
        );
        assert_eq!(cas.num_terms(), 2);
        // q = 1 image: 2bc + h^2/2.
        let one = num_rational::BigRational::from_integer(1.into());
        let c1 = cas.eval_q(&one).unwrap().retag(ClassicalSl2).unwrap();
        assert_eq!(c1, casimir(ClassicalSl2));
    }

    #[test]
    fn centrality_of_trace_powers() {
        let l = l_matrix();
        let mut pw = l.clone();
        for _ in 0..3 {
            let tr = quantum_trace(&pw).unwrap();
            for g in ["b", "h", "c", "l"] {
                let x = NCPoly::generator_named(R4, g).unwrap();
                assert!(tr.commutator(&x).unwrap().is_zero());
            }
            pw = pw.mul(&l).unwrap();
        }
    }

    #[test]
    fn pairing_table() {
        let b = NCPoly::generator_named(R4, "b").unwrap();
        let c = NCPoly::generator_named(R4, "c").unwrap();
        let h = NCPoly::generator_named(R4, "h").unwrap();
        let l = NCPoly::generator_named(R4, "l").unwrap();
        assert_eq!(pairing(&b, &c).unwrap(), Scalar::q_pow(-3));
        assert_eq!(pairing(&c, &b).unwrap(), Scalar::q_pow(-1));
        assert_eq!(
            pairing(&h, &h).unwrap(),
            Scalar::q_pow(-2) * Scalar::q_int(2)
        );
        assert_eq!(
            pairing(&l, &l).unwrap(),
            Scalar::q_pow(-2) * Scalar::q_int(2)
        );
        // h and l pair to zero: q^-1 <a,a> - q <d,d> = q^-2 - q^-2.
        assert!(pairing(&h, &l).unwrap().is_zero());
        assert!(pairing(&l, &h).unwrap().is_zero());
        assert!(pairing(&b, &b).unwrap().is_zero());
        let nonlinear = b.mul(&c).unwrap();
        assert!(matches!(pairing(&nonlinear, &b), Err(Error::NonLinear)));
    }

    #[test]
    fn split_casimir_with_identity_matches_display() {
        let m = split_casimir_matrix(&Mat::identity(3), R3).unwrap();
        let two_q_inv = Scalar::q_int(2).inv().unwrap();
        let gen = |s: &str| NCPoly::generator_named(R3, s).unwrap();
        let q = Scalar::q;
        // (1/2_q) [[q^2 h, -2_q q c, 0], [-b, (q^2-1) h, q^2 c], [0, 2_q q b, -h]]
        let expect = AlgMatrix::from_entries(
            R3,
            3,
            vec![
                gen("h").scale(&(q().pow(2) * two_q_inv.clone())),
                gen("c").scale(&-q()),
                NCPoly::zero(R3),
                gen("b").scale(&-two_q_inv.clone()),
                gen("h").scale(&((q().pow(2) - Scalar::one()) * two_q_inv.clone())),
                gen("c").scale(&(q().pow(2) * two_q_inv.clone())),
                NCPoly::zero(R3),
                gen("b").scale(&q()),
                gen("h").scale(&-two_q_inv.clone()),
            ],
        )
        .unwrap();
        assert_eq!(m, expect);
        // Trace: (1/2_q)(q^2 + q^2 - 1 - 1) h = 2(q^2-1)/2_q h.
        let tr = m.at(0, 0).add(m.at(1, 1)).unwrap().add(m.at(2, 2)).unwrap();
        let coeff = Scalar::int(2) * (q().pow(2) - Scalar::one()) * two_q_inv;
        assert_eq!(tr, gen("h").scale(&coeff));
    }

    #[test]
    fn split_casimir_classical_limit() {
        let m = split_casimir_matrix(&Mat::identity(3), R3)
            .unwrap()
            .eval_q1(ClassicalSl2)
            .unwrap();
        let gen = |s: &str| NCPoly::generator_named(ClassicalSl2, s).unwrap();
        let half = Scalar::rational(1, 2);
        let expect = AlgMatrix::from_entries(
            ClassicalSl2,
            3,
            vec![
                gen("h").scale(&half),
                gen("c").scale(&-Scalar::one()),
                NCPoly::zero(ClassicalSl2),
                gen("b").scale(&-half.clone()),
                NCPoly::zero(ClassicalSl2),
                gen("c").scale(&half),
                NCPoly::zero(ClassicalSl2),
                gen("b"),
                gen("h").scale(&-half),
            ],
        )
        .unwrap();
        assert_eq!(m, expect);
    }

    #[test]
    fn ch_relation_over_r3_and_h2() {
        for alg in [R3, H2] {
            let l = split_casimir_l(&Mat::identity(3), alg).unwrap();
            let (c2, c1, c0) = ch_relation(&l).unwrap();
            for g in ["b", "h", "c"] {
                let x = NCPoly::generator_named(alg, g).unwrap();
                assert!(c2.commutator(&x).unwrap().is_zero());
                assert!(c1.commutator(&x).unwrap().is_zero());
                assert!(c0.commutator(&x).unwrap().is_zero());
            }
            if alg == H2 {
                // Coefficients become scalars on the quotient.
                assert!(c2.as_constant().is_some());
                assert!(c1.as_constant().is_some());
                assert!(c0.as_constant().is_some());
            }
        }
    }

    #[test]
    fn ch_relation_matches_classical_char_poly() {
        // At q = 1 with commuting entries the relation must agree with the
        // ordinary characteristic polynomial: tr M = 0, det M = 0, so
        // M^3 = (Cas/2) M.
        let l = split_casimir_l(&Mat::identity(3), R3)
            .unwrap()
            .eval_q1(ClassicalSl2)
            .unwrap();
        let (c2, c1, c0) = ch_relation(&l).unwrap();
        // Independent oracle: elementary symmetric functions of the matrix.
        let tr = l.at(0, 0).add(l.at(1, 1)).unwrap().add(l.at(2, 2)).unwrap();
        let l2 = l.mul(&l).unwrap();
        let tr2 = l2
            .at(0, 0)
            .add(l2.at(1, 1))
            .unwrap()
            .add(l2.at(2, 2))
            .unwrap();
        let sigma2 = tr
            .mul(&tr)
            .unwrap()
            .sub(&tr2)
            .unwrap()
            .scale(&Scalar::rational(1, 2));
        let mut det = NCPoly::zero(ClassicalSl2);
        for (sgn, p) in [
            (1, [(0usize, 0usize), (1, 1), (2, 2)]),
            (1, [(0, 1), (1, 2), (2, 0)]),
            (1, [(0, 2), (1, 0), (2, 1)]),
            (-1, [(0, 2), (1, 1), (2, 0)]),
            (-1, [(0, 0), (1, 2), (2, 1)]),
            (-1, [(0, 1), (1, 0), (2, 2)]),
        ] {
            let term = l
                .at(p[0].0, p[0].1)
                .mul(l.at(p[1].0, p[1].1))
                .unwrap()
                .mul(l.at(p[2].0, p[2].1))
                .unwrap()
                .scale(&Scalar::int(sgn));
            det = det.add(&term).unwrap();
        }
        // L^3 = tr L^2 - sigma2 L + det I.
        assert_eq!(c2, tr);
        assert_eq!(c1, sigma2.neg());
        assert_eq!(c0, det);
        // For this matrix: tr = 0, det = 0, sigma2 = -Cas/2.
        assert!(c2.is_zero());
        assert!(c0.is_zero());
        let cas = casimir(ClassicalSl2);
        assert_eq!(c1, cas.scale(&Scalar::rational(1, 2)));
    }

    #[test]
    fn idempotent_search_reports_without_asserting() {
        let out = idempotent_poly_search(&Mat::identity(3)).unwrap();
        // The outcome is data; for P = I it happens to be unsolvable, and the
        // report must carry a witness in that case.
        if !out.solvable {
            assert!(out.witness.is_some());
        } else {
            assert!(out.solution.is_some());
        }
        // q = 1 report: the same search against the classical idempotent.
        let l = split_casimir_l(&Mat::identity(3), H2)
            .unwrap()
            .eval_q1(ClassicalHyperboloid)
            .unwrap();
        let (ebar, _) = crate::laplace::idempotent(ClassicalHyperboloid).unwrap();
        let classical = matrix_poly_search(&ebar, &l).unwrap();
        println!("classical search solvable: {}", classical.solvable);
        if let Some((a, b, g)) = &classical.solution {
            println!("alpha = {a}, beta = {b}, gamma = {g}");
        }
    }

    #[test]
    fn poly_search_zero_target_is_trivial() {
        let l = split_casimir_l(&Mat::identity(3), H2).unwrap();
        let zero = AlgMatrix::zero(H2, 3);
        let out = matrix_poly_search(&zero, &l).unwrap();
        assert!(out.solvable);
        let (a, b, g) = out.solution.unwrap();
        assert!(a.is_zero() && b.is_zero() && g.is_zero());
    }
}
