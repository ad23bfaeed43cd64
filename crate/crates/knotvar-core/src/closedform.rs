//! Symbolic construction of the closed-form motives as exact polynomials in
//! `q`, `xi_m`, `xi_n`.
//!
//! The AGL1 motive is `(xi_m xi_n - xi_n - xi_m + 2)(q^2 - q)`. The AGL2
//! motive is the three-summand expression with overall factor `1/4`; that
//! quarter does not cancel coefficient-wise (the `q^8` coefficient is
//! `(xi_m-1)(xi_m-2)(xi_n-1)(xi_n-2)/4`), so every motive here is carried
//! internally scaled by 4 and the exact division happens after the `xi`
//! symbols are specialized to integers, where divisibility is asserted.
//! Per-stratum motives follow the same convention. The A3 stratum is built
//! from the un-expanded base expression `(q-1)^2 - [(Omega^2 - D)]^+ -
//! |Omega| (q-1-|Omega|)`; the expanded constant term printed for it
//! elsewhere is inconsistent with the A-family total and is not used.

use crate::error::{Error, Result};
use crate::exactpoly::{IntPoly, MotiveExpr};
use crate::strata::StratumFamily;
use num_bigint::BigInt;
use num_integer::gcd;

/// Group selector for formula-level operations.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Group {
    Agl1,
    Agl2,
}

/// A motive carried as `4 x (expression)` so that the quarter factors of the
/// AGL2 bookkeeping stay exact; division happens at specialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Motive {
    four_times: MotiveExpr,
}

impl Motive {
    /// Wrap an expression that already equals four times the motive.
    pub fn from_quadruple(four_times: MotiveExpr) -> Self {
        Motive { four_times }
    }

    /// Wrap an integral motive.
    pub fn from_integral(e: &MotiveExpr) -> Self {
        Motive {
            four_times: e.scale(4),
        }
    }

    /// The exact expression scaled by 4; the carrier for symbolic identities.
    pub fn scaled4(&self) -> &MotiveExpr {
        &self.four_times
    }

    pub fn is_zero(&self) -> bool {
        self.four_times.is_zero()
    }

    pub fn add(&self, rhs: &Motive) -> Motive {
        Motive {
            four_times: self.four_times.add(&rhs.four_times),
        }
    }

    pub fn sub(&self, rhs: &Motive) -> Motive {
        Motive {
            four_times: self.four_times.sub(&rhs.four_times),
        }
    }

    /// Substitute the `xi` symbols and divide by 4, asserting divisibility.
    pub fn specialize(&self, xi_m: i64, xi_n: i64) -> IntPoly {
        self.four_times.specialize(xi_m, xi_n).div_exact(4)
    }

    /// Exact value at a finite field size.
    pub fn eval(&self, q: u64, xi_m: i64, xi_n: i64) -> BigInt {
        self.specialize(xi_m, xi_n).eval_u64(q)
    }

    /// Numerator and denominator with the denominator reduced to a divisor
    /// of 4.
    pub fn reduced(&self) -> (MotiveExpr, u8) {
        use num_traits::Zero;
        for d in [4i64, 2] {
            let divisible = self.four_times.terms().all(|(_, c)| (c % d).is_zero());
            if divisible {
                return (self.four_times.div_exact(d), (4 / d) as u8);
            }
        }
        (self.four_times.clone(), 4)
    }

    /// Serialization in the exactpoly JSON form. Integral motives use the
    /// plain schema; fractional ones carry an extra `denominator` key.
    pub fn to_json(&self) -> serde_json::Value {
        let (num, den) = self.reduced();
        let mut v = num.to_json();
        if den != 1 {
            v.as_object_mut()
                .unwrap()
                .insert("denominator".into(), serde_json::json!(den.to_string()));
        }
        v
    }
}

impl std::fmt::Display for Motive {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (num, den) = self.reduced();
        if den == 1 {
            write!(f, "{}", num)
        } else {
            write!(f, "({}) / {}", num, den)
        }
    }
}

fn q() -> MotiveExpr {
    MotiveExpr::q()
}
fn xm() -> MotiveExpr {
    MotiveExpr::xi_m()
}
fn xn() -> MotiveExpr {
    MotiveExpr::xi_n()
}
fn c(v: i64) -> MotiveExpr {
    MotiveExpr::constant(v)
}
fn qp(e: u32) -> MotiveExpr {
    MotiveExpr::monomial([e, 0, 0], 1)
}

/// `|Omega| = xi_m xi_n - xi_m - xi_n + 1 = (xi_m - 1)(xi_n - 1)`.
fn omega_size() -> MotiveExpr {
    xm().sub(&c(1)).mul(&xn().sub(&c(1)))
}

fn check_coprime(m: u64, n: u64) -> Result<()> {
    if gcd(m, n) != 1 {
        return Err(Error::NotCoprime(m, n));
    }
    Ok(())
}

/// The AGL1 motive `(xi_m xi_n - xi_n - xi_m + 2)(q^2 - q)`. The additive
/// constant is `+2`: one class for every point of `Omega` plus one for the
/// generic fiber.
pub fn motive_agl1(m: u64, n: u64) -> Result<Motive> {
    check_coprime(m, n)?;
    let inner = xm().mul(&xn()).sub(&xm()).sub(&xn()).add(&c(2));
    Ok(Motive::from_integral(&inner.mul(&qp(2).sub(&q()))))
}

/// The full AGL2 motive, hypotheses enforced.
pub fn motive_agl2(m: u64, n: u64) -> Result<Motive> {
    if m.min(n) < 3 || m.is_multiple_of(2) || n.is_multiple_of(2) {
        return Err(Error::HypothesisViolation(format!(
            "the AGL2 closed form requires odd m, n >= 3, got ({}, {})",
            m, n
        )));
    }
    motive_agl2_unchecked(m, n)
}

/// The AGL2 motive without the oddness gate, for outside-theorem probes.
pub fn motive_agl2_unchecked(m: u64, n: u64) -> Result<Motive> {
    check_coprime(m, n)?;
    let s1 = qp(7)
        .add(&qp(6))
        .add(&qp(5))
        .sub(&qp(4).scale(5))
        .add(&qp(3).scale(2));
    let qm1 = q().sub(&c(1));
    let qm2 = q().sub(&c(2));
    let qp1 = q().add(&c(1));
    let s2 = xm()
        .mul(&xn())
        .sub(&xm())
        .sub(&xn())
        .mul(&qm1)
        .mul(&qm1)
        .mul(&qm2)
        .mul(&qp1)
        .mul(&qp(3));
    let bracket = xm()
        .mul(&xn())
        .sub(&xm())
        .sub(&xn())
        .add(&c(2))
        .mul(&qm1)
        .scale(2)
        .add(
            &qm1.mul(&qm2).mul(
                &xm()
                    .sub(&c(2))
                    .mul(&xn().sub(&c(2)))
                    .mul(&q())
                    .add(&xm().mul(&xn()))
                    .sub(&c(4)),
            ),
        );
    let s3 = xm()
        .sub(&c(1))
        .mul(&xn().sub(&c(1)))
        .mul(&qp(5).sub(&qp(3)))
        .mul(&bracket);
    Ok(Motive::from_quadruple(s1.add(&s2).add(&s3)))
}

/// The motive of the irreducible `GL2` locus,
/// `1/4 [PGL2] |Omega| (q - 2)(q - 1)` with `[PGL2] = q^3 - q`.
pub fn gl2_irr_motive() -> Motive {
    Motive::from_quadruple(
        qp(3)
            .sub(&q())
            .mul(&omega_size())
            .mul(&q().sub(&c(2)))
            .mul(&q().sub(&c(1))),
    )
}

/// The forbidden-eigenvalue bookkeeping term
/// `ell = 1/4 xi_m xi_n (xi_m - 1)(xi_n - 1)`.
pub fn ell_motive() -> Motive {
    Motive::from_quadruple(xm().mul(&xn()).mul(&omega_size()))
}

/// Per-stratum AGL2 motive, exactly as displayed in the stratification.
pub fn stratum_motive(family: StratumFamily) -> Motive {
    use StratumFamily::*;
    let om = omega_size();
    let xm1 = xm().sub(&c(1));
    let xm2 = xm().sub(&c(2));
    let xn1 = xn().sub(&c(1));
    let xn2 = xn().sub(&c(2));
    let qm1 = q().sub(&c(1));
    let qp1 = q().add(&c(1));
    // |Omega|((q - 1) - |Omega|) rewritten through xi products
    let om_rest = om.mul(&qm1.sub(&om));
    // ((Omega^2 - diagonal) / Z2) has |Omega|(|Omega| - 1)/2 points
    let om_pairs_x2 = om.mul(&om.sub(&c(1)));
    let four_times = match family {
        Irr1 => xn1
            .mul(&xn2)
            .mul(&xm1)
            .mul(&xm2)
            .mul(&qp(5).sub(&qp(4).scale(2)))
            .mul(&qp(3).sub(&q())),
        Irr2 => xn1
            .mul(&xn2)
            .mul(&xm1)
            .mul(&qp(4).sub(&qp(3).scale(2)))
            .mul(&qp(3).sub(&q()))
            .scale(2),
        Irr3 => xm1
            .mul(&xm2)
            .mul(&xn1)
            .mul(&qp(4).sub(&qp(3).scale(2)))
            .mul(&qp(3).sub(&q()))
            .scale(2),
        Irr4 => xm1
            .mul(&xn1)
            .mul(&qp(3).sub(&qp(2).scale(2)))
            .mul(&qp(3).sub(&q()))
            .scale(4),
        Irr5 => xm1
            .mul(&xn1)
            .mul(&q().sub(&c(1)).sub(&xm().mul(&xn())))
            .mul(&qp(3).sub(&qp(2).scale(2)))
            .mul(&qp(3).sub(&q())),
        A1 => om_pairs_x2.mul(&qp(4)).mul(&qp(2).add(&q())).scale(2),
        A2 => om_rest.mul(&qp(3)).mul(&qp(2).add(&q())).scale(4),
        A3 => {
            let base = qm1
                .mul(&qm1)
                .scale(4)
                .sub(&om_pairs_x2.scale(2))
                .sub(&om_rest.scale(4));
            base.mul(&qp(2)).mul(&qp(2).add(&q()))
        }
        B1 => om.mul(&qp(4)).scale(4),
        B2 => qm1.sub(&om).mul(&qp(2)).scale(4),
        C1 => om.mul(&qp(3)).mul(&qm1).mul(&qp1).scale(4),
        C2 => qm1
            .mul(&qm1)
            .mul(&qp1)
            .sub(&om.mul(&qm1).mul(&qp1))
            .mul(&qp(2))
            .scale(4),
    };
    Motive::from_quadruple(four_times)
}

/// Sum of the five irreducible stratum motives.
pub fn irr_total_motive() -> Motive {
    use StratumFamily::*;
    [Irr2, Irr3, Irr4, Irr5]
        .iter()
        .fold(stratum_motive(Irr1), |acc, &f| acc.add(&stratum_motive(f)))
}

/// The closing display the five irreducible strata are summed to:
/// `1/4 (xi_m-1)(xi_n-1)(q^4 - 3q^3 + 2q^2)(q^3 - q)((xi_m-2)(xi_n-2)q +
/// xi_m xi_n - 3)`.
pub fn irr_closing_display() -> Motive {
    Motive::from_quadruple(
        xm().sub(&c(1))
            .mul(&xn().sub(&c(1)))
            .mul(&qp(4).sub(&qp(3).scale(3)).add(&qp(2).scale(2)))
            .mul(&qp(3).sub(&q()))
            .mul(
                &xm()
                    .sub(&c(2))
                    .mul(&xn().sub(&c(2)))
                    .mul(&q())
                    .add(&xm().mul(&xn()))
                    .sub(&c(3)),
            ),
    )
}

pub fn a_total_motive() -> Motive {
    use StratumFamily::*;
    stratum_motive(A1)
        .add(&stratum_motive(A2))
        .add(&stratum_motive(A3))
}

pub fn b_total_motive() -> Motive {
    stratum_motive(StratumFamily::B1).add(&stratum_motive(StratumFamily::B2))
}

pub fn c_total_motive() -> Motive {
    stratum_motive(StratumFamily::C1).add(&stratum_motive(StratumFamily::C2))
}

/// Trend polynomial: the motive specialized at divisor values of the two
/// `xi` symbols.
pub fn counting_polynomial(m: u64, n: u64, group: Group, d_m: u64, d_n: u64) -> Result<IntPoly> {
    if d_m == 0 || !m.is_multiple_of(d_m) || d_n == 0 || !n.is_multiple_of(d_n) {
        return Err(Error::Precondition(format!(
            "({}, {}) must divide ({}, {})",
            d_m, d_n, m, n
        )));
    }
    let motive = match group {
        Group::Agl1 => motive_agl1(m, n)?,
        Group::Agl2 => motive_agl2(m, n)?,
    };
    Ok(motive.specialize(d_m as i64, d_n as i64))
}

/// Characteristic of a prime power.
pub fn char_of(q: u64) -> u64 {
    crate::ffield::prime_factors(q)[0]
}

/// Clean prime powers admit no new `nm`-torsion in the quadratic extension:
/// `gcd(nm, q + 1) = 1`.
pub fn is_clean(q: u64, m: u64, n: u64) -> bool {
    gcd(n * m, q + 1) == 1
}

/// Closed-form hypotheses: the characteristic divides neither `n` nor `m`; for
/// AGL2 additionally the characteristic is odd and `m, n` are odd and at
/// least 3.
pub fn hypotheses_ok(q: u64, m: u64, n: u64, group: Group) -> bool {
    let p = char_of(q);
    let base = !m.is_multiple_of(p) && !n.is_multiple_of(p);
    match group {
        Group::Agl1 => base,
        Group::Agl2 => base && p != 2 && m % 2 == 1 && n % 2 == 1 && m >= 3 && n >= 3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::IntPoly;

    #[test]
    fn agl1_motive_examples() {
        let m11 = motive_agl1(1, 1).unwrap();
        assert_eq!(m11.specialize(1, 1), IntPoly::from_i64(&[0, -1, 1]));
        let m35 = motive_agl1(3, 5).unwrap();
        // complex specialization: ((n-1)(m-1)+1)(q^2-q) = 9(q^2-q)
        assert_eq!(m35.specialize(3, 5), IntPoly::from_i64(&[0, -9, 9]));
        // xi_4 = 2, xi_5 = 5 sits on the middle trend 5(q^2-q)
        let m45 = motive_agl1(4, 5).unwrap();
        assert_eq!(m45.specialize(2, 5), IntPoly::from_i64(&[0, -5, 5]));
        assert!(motive_agl1(6, 3).is_err());
    }

    #[test]
    fn agl2_motive_examples() {
        let m = motive_agl2(3, 5).unwrap();
        assert_eq!(
            m.specialize(1, 1),
            IntPoly::from_i64(&[0, 0, 0, 1, -2, 0, 1])
        );
        assert_eq!(m.eval(7, 3, 3), BigInt::from(7_521_990u32));
        assert_eq!(
            m.eval(13, 3, 1),
            BigInt::from(13u64.pow(6) - 2 * 13u64.pow(4) + 13u64.pow(3))
        );
        assert!(motive_agl2(4, 5).is_err());
        assert!(motive_agl2(1, 3).is_err());
        assert!(motive_agl2_unchecked(1, 3).is_ok());
    }

    #[test]
    fn agl2_motive_degree() {
        // the top q-degree is 8, carried by the A1-type quarter term
        // (xi_m-1)(xi_m-2)(xi_n-1)(xi_n-2)/4; at xi = 1 the degree drops to 6
        let m = motive_agl2(3, 5).unwrap();
        assert_eq!(m.scaled4().deg_q(), Some(8));
        let lead = m.scaled4().q_coefficient(8);
        let expect = MotiveExpr::xi_m()
            .sub(&MotiveExpr::constant(1))
            .mul(&MotiveExpr::xi_m().sub(&MotiveExpr::constant(2)))
            .mul(&MotiveExpr::xi_n().sub(&MotiveExpr::constant(1)))
            .mul(&MotiveExpr::xi_n().sub(&MotiveExpr::constant(2)));
        assert_eq!(lead, expect);
        assert_eq!(m.specialize(1, 1).degree(), Some(6));
    }

    #[test]
    fn stratum_motive_displays() {
        use StratumFamily::*;
        // IRR4 = (xi_m-1)(xi_n-1)(q^3-2q^2)(q^3-q)
        let irr4 = stratum_motive(Irr4);
        let (num, den) = irr4.reduced();
        assert_eq!(den, 1);
        assert_eq!(
            num.specialize(3, 3).eval_u64(7),
            BigInt::from(4 * 245 * 336)
        );
        // B-total = (xi_m-1)(xi_n-1)(q^4-q^2) + (q-1)q^2
        let b = b_total_motive();
        assert_eq!(b.eval(7, 3, 1), BigInt::from(294));
        assert_eq!(b.eval(7, 3, 3), BigInt::from(4 * (2401 - 49) + 6 * 49));
        // C-total = (q-1)^2(q+1)q^2 + (xi_m-1)(xi_n-1)(q-1)(q+1)(q^3-q^2)
        let ctot = c_total_motive();
        assert_eq!(ctot.eval(7, 3, 1), BigInt::from(14112));
    }

    #[test]
    fn symbolic_identities() {
        // (4a) the five IRR strata sum to the closing display
        assert_eq!(
            irr_total_motive().scaled4(),
            irr_closing_display().scaled4()
        );
        // (4b) IRR + A + B + C = the full motive
        let total = irr_total_motive()
            .add(&a_total_motive())
            .add(&b_total_motive())
            .add(&c_total_motive());
        assert_eq!(total.scaled4(), motive_agl2(3, 5).unwrap().scaled4());
        // Irr5 = gl2_irr q^2 - ell (q^3 - 2q^2)(q^3 - q)
        let q2 = MotiveExpr::monomial([2, 0, 0], 1);
        let fiber = MotiveExpr::monomial([3, 0, 0], 1).sub(&MotiveExpr::monomial([2, 0, 0], 2));
        let qcubed_q = MotiveExpr::monomial([3, 0, 0], 1).sub(&MotiveExpr::q());
        let lhs = stratum_motive(StratumFamily::Irr5).scaled4().clone();
        let rhs = gl2_irr_motive()
            .scaled4()
            .mul(&q2)
            .sub(&ell_motive().scaled4().mul(&fiber).mul(&qcubed_q));
        assert_eq!(lhs, rhs);
        // the forbidden-eigenvalue tally: the four eigendata coefficients of
        // IRR1..IRR4 sum to ell = 1/4 xi_m xi_n (xi_m - 1)(xi_n - 1)
        let xm1 = MotiveExpr::xi_m().sub(&MotiveExpr::constant(1));
        let xm2 = MotiveExpr::xi_m().sub(&MotiveExpr::constant(2));
        let xn1 = MotiveExpr::xi_n().sub(&MotiveExpr::constant(1));
        let xn2 = MotiveExpr::xi_n().sub(&MotiveExpr::constant(2));
        let ell_sum_x4 = xn1
            .mul(&xn2)
            .mul(&xm1)
            .mul(&xm2)
            .add(&xn1.mul(&xn2).mul(&xm1).scale(2))
            .add(&xm1.mul(&xm2).mul(&xn1).scale(2))
            .add(&xm1.mul(&xn1).scale(4));
        assert_eq!(&ell_sum_x4, ell_motive().scaled4());
    }

    #[test]
    fn counting_polynomials() {
        assert_eq!(
            counting_polynomial(4, 5, Group::Agl1, 4, 5).unwrap(),
            IntPoly::from_i64(&[0, -13, 13])
        );
        assert_eq!(
            counting_polynomial(4, 5, Group::Agl1, 2, 1).unwrap(),
            IntPoly::from_i64(&[0, -1, 1])
        );
        assert_eq!(
            counting_polynomial(9, 11, Group::Agl1, 1, 1).unwrap(),
            IntPoly::from_i64(&[0, -1, 1])
        );
        assert!(counting_polynomial(4, 5, Group::Agl1, 3, 5).is_err());
    }

    #[test]
    fn cleanliness_and_hypotheses() {
        assert!(is_clean(7, 3, 5));
        assert!(!is_clean(11, 3, 5));
        assert!(!is_clean(29, 3, 5));
        assert!(hypotheses_ok(7, 3, 5, Group::Agl2));
        assert!(!hypotheses_ok(7, 3, 7, Group::Agl2));
        assert!(!hypotheses_ok(9, 3, 5, Group::Agl2));
        assert!(!hypotheses_ok(8, 3, 5, Group::Agl2));
        assert!(hypotheses_ok(8, 3, 5, Group::Agl1));
        assert!(!hypotheses_ok(7, 1, 5, Group::Agl2));
        assert!(hypotheses_ok(7, 1, 5, Group::Agl1));
    }
}
