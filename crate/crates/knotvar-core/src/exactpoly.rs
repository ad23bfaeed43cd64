//! Exact multivariate polynomial arithmetic over arbitrary-precision integers
//! in the commuting symbols `q`, `xi_m`, `xi_n`.
//!
//! [`MotiveExpr`] is the carrier of motives: a sparse map from exponent
//! triples `(e_q, e_xi_m, e_xi_n)` to nonzero `BigInt` coefficients. The
//! symbol `xi_nm` is never stored; it is eliminated as `xi_m * xi_n`,
//! which is exact over every finite field since for coprime `m, n` the
//! `nm`-torsion of the cyclic unit group splits as a product.
//! [`IntPoly`] is the univariate image after specializing the two `xi`
//! symbols, the "counting polynomial" side of the picture.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse exact polynomial in `q`, `xi_m`, `xi_n`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MotiveExpr {
    terms: BTreeMap<[u32; 3], BigInt>,
}

impl MotiveExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut e = Self::default();
        if c != 0 {
            e.terms.insert([0, 0, 0], BigInt::from(c));
        }
        e
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The Lefschetz symbol `q`.
    pub fn q() -> Self {
        Self::monomial([1, 0, 0], 1)
    }

    pub fn xi_m() -> Self {
        Self::monomial([0, 1, 0], 1)
    }

    pub fn xi_n() -> Self {
        Self::monomial([0, 0, 1], 1)
    }

    pub fn monomial(exps: [u32; 3], coeff: i64) -> Self {
        let mut e = Self::default();
        if coeff != 0 {
            e.terms.insert(exps, BigInt::from(coeff));
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &BigInt)> {
        self.terms.iter()
    }

    fn insert(&mut self, exps: [u32; 3], c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.insert([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact division of every coefficient by `d`; divisibility is asserted.
    pub fn div_exact(&self, d: i64) -> Self {
        assert!(d != 0);
        let dd = BigInt::from(d);
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let (quo, rem) = num_integer::Integer::div_rem(c, &dd);
                    assert!(rem.is_zero(), "coefficient {} not divisible by {}", c, d);
                    (*e, quo)
                })
                .collect(),
        }
    }

    /// Degree in the symbol `q`, or `None` for the zero polynomial.
    pub fn deg_q(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[0]).max()
    }

    /// The coefficient of `q^e` as a polynomial in `xi_m`, `xi_n`.
    pub fn q_coefficient(&self, e: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(ex, _)| ex[0] == e)
                .map(|(ex, c)| ([0, ex[1], ex[2]], c.clone()))
                .collect(),
        }
    }

    /// Substitute integers for the two `xi` symbols, leaving an exact
    /// polynomial in `q`.
    pub fn specialize(&self, xi_m: i64, xi_n: i64) -> IntPoly {
        let (xm, xn) = (BigInt::from(xi_m), BigInt::from(xi_n));
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (e, c) in &self.terms {
            let deg = e[0] as usize;
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, BigInt::zero());
            }
            coeffs[deg] += c * xm.pow(e[1]) * xn.pow(e[2]);
        }
        IntPoly::new(coeffs)
    }

    /// Exact serialization: `{"vars":["q","xi_m","xi_n"],"terms":[...]}` with
    /// terms sorted lexicographically by exponent triple.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                serde_json::json!({
                    "coeff": c.to_string(),
                    "exps": [e[0], e[1], e[2]],
                })
            })
            .collect();
        serde_json::json!({ "vars": ["q", "xi_m", "xi_n"], "terms": terms })
    }
}

fn fmt_term(
    f: &mut fmt::Formatter<'_>,
    exps: &[u32; 3],
    coeff: &BigInt,
    first: bool,
) -> fmt::Result {
    let mag = coeff.abs();
    if first {
        if coeff.is_negative() {
            write!(f, "-")?;
        }
    } else if coeff.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let names = ["q", "xi_m", "xi_n"];
    let mut parts: Vec<String> = Vec::new();
    if !mag.is_one() || exps == &[0, 0, 0] {
        parts.push(mag.to_string());
    }
    for (i, name) in names.iter().enumerate() {
        match exps[i] {
            0 => {}
            1 => parts.push(name.to_string()),
            e => parts.push(format!("{}^{}", name, e)),
        }
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for MotiveExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            fmt_term(f, e, c, i == 0)?;
        }
        Ok(())
    }
}

/// Dense exact univariate polynomial with `BigInt` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Build from ascending coefficients; trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, t: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_u64(&self, t: u64) -> BigInt {
        self.eval(&BigInt::from(t))
    }

    /// Exact coefficient-wise division; divisibility is asserted.
    pub fn div_exact(&self, d: i64) -> IntPoly {
        assert!(d != 0);
        let dd = BigInt::from(d);
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let (quo, rem) = num_integer::Integer::div_rem(c, &dd);
                    assert!(rem.is_zero(), "coefficient {} not divisible by {}", c, d);
                    quo
                })
                .collect(),
        )
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match deg {
                0 => write!(f, "{}", mag)?,
                1 if mag.is_one() => write!(f, "t")?,
                1 => write!(f, "{}*t", mag)?,
                _ if mag.is_one() => write!(f, "t^{}", deg)?,
                _ => write!(f, "{}*t^{}", mag, deg)?,
            }
        }
        Ok(())
    }
}
