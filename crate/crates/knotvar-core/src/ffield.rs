//! Construction and exact arithmetic of small finite fields `F_{p^k}`.
//!
//! A [`FieldCtx`] fully materializes one field: deterministic irreducible
//! modulus (smallest in lex order on coefficient tuples, highest degree
//! first), discrete-log tables over a found generator, and the canonical
//! integer encoding `code(x) = sum coeffs[i] * p^i`, a bijection onto
//! `[0, q)`. Elements are lightweight copies that remember which context
//! they belong to; mixing contexts is a programming error caught by a
//! debug assertion.

use crate::error::{Error, Result};
use std::sync::atomic::{AtomicU32, Ordering};

/// Default cap on field size for [`make_field`].
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

static NEXT_FIELD_ID: AtomicU32 = AtomicU32::new(1);

/// Element of a finite field, identified by its canonical integer code.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Fq {
    code: u32,
    fid: u32,
}

impl Fq {
    /// Canonical integer encoding, a bijection onto `[0, q)`.
    pub fn code(self) -> u64 {
        self.code as u64
    }
}

/// A fully materialized finite field `F_{p^k}`.
pub struct FieldCtx {
    id: u32,
    pub p: u64,
    pub k: u32,
    pub q: u64,
    /// Monic modulus, coefficients of degrees `0..=k`; `modulus[k] == 1`.
    modulus: Vec<u64>,
    /// `exp[i]` is the code of `g^i` for the chosen generator `g`; length `q-1`.
    exp: Vec<u32>,
    /// `log[code]` inverts `exp` for nonzero codes; `log[0]` is unused.
    log: Vec<u32>,
    generator: u32,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldCtx(q = {}^{} = {})", self.p, self.k, self.q)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of `n`, ascending, without multiplicity.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---- bootstrap polynomial arithmetic over F_p (coefficient vectors) ----

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    // remainder of a by monic-leading b
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let c = (r[r.len() - 1] * lead_inv) % p;
        let shift = r.len() - 1 - db;
        for i in 0..=db {
            let idx = shift + i;
            r[idx] = (r[idx] + p - c * b[i] % p) % p;
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime, a != 0 mod p
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn unpack(mut code: u64, p: u64, k: u32) -> Vec<u64> {
    let mut v = Vec::with_capacity(k as usize);
    for _ in 0..k {
        v.push(code % p);
        code /= p;
    }
    v
}

fn pack(v: &[u64], p: u64) -> u64 {
    let mut c = 0u64;
    for &d in v.iter().rev() {
        c = c * p + d;
    }
    c
}

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(k, 0);
    r
}

/// True if the monic polynomial (coefficients ascending) is irreducible
/// over `F_p`, decided by exhaustive scan over monic divisors of degree
/// at most `deg/2`.
pub fn poly_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for v in 0..count {
            let mut div = unpack(v, p, d as u32);
            div.push(1); // monic of degree d
            if poly_rem(poly, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest irreducible monic modulus of degree `k`
/// over `F_p` (coefficient tuples compared highest degree first).
pub fn canonical_modulus(p: u64, k: u32) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1]; // the polynomial x
    }
    for v in 0..p.pow(k) {
        let mut cand = unpack(v, p, k);
        cand.push(1);
        if poly_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree");
}

/// The next irreducible monic modulus after the canonical one, in the same
/// lex order. Exists for every `p^k` with k >= 2 at desk scale.
pub fn alternative_modulus(p: u64, k: u32) -> Result<Vec<u64>> {
    if k < 2 {
        return Err(Error::Precondition(
            "prime fields have a unique canonical modulus".into(),
        ));
    }
    let first = canonical_modulus(p, k);
    let start = pack(&first[..k as usize], p) + 1;
    for v in start..p.pow(k) {
        let mut cand = unpack(v, p, k);
        cand.push(1);
        if poly_irreducible(&cand, p) {
            return Ok(cand);
        }
    }
    Err(Error::Precondition("no alternative modulus found".into()))
}

/// Build `F_{p^k}` with the canonical modulus and the default size bound.
pub fn make_field(p: u64, k: u32) -> Result<FieldCtx> {
    make_field_bounded(p, k, DEFAULT_FIELD_BOUND)
}

/// Build `F_{p^k}` with the canonical modulus and an explicit size bound.
pub fn make_field_bounded(p: u64, k: u32, bound: u64) -> Result<FieldCtx> {
    validate(p, k, bound)?;
    let modulus = canonical_modulus(p, k);
    FieldCtx::build(p, k, modulus)
}

/// Build `F_{p^k}` with a caller-supplied monic irreducible modulus
/// (coefficients ascending, length `k + 1`).
pub fn make_field_with_modulus(p: u64, k: u32, modulus: &[u64]) -> Result<FieldCtx> {
    validate(p, k, DEFAULT_FIELD_BOUND)?;
    if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 {
        return Err(Error::Precondition(
            "modulus must be monic of degree k".into(),
        ));
    }
    if modulus.iter().any(|&c| c >= p) {
        return Err(Error::Precondition(
            "modulus coefficients must lie in [0, p)".into(),
        ));
    }
    if !poly_irreducible(modulus, p) {
        return Err(Error::NotIrreducible(k as usize, p));
    }
    FieldCtx::build(p, k, modulus.to_vec())
}

fn validate(p: u64, k: u32, bound: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k < 1 {
        return Err(Error::BadDegree);
    }
    let mut q: u128 = 1;
    for _ in 0..k {
        q *= p as u128;
        if q > bound as u128 {
            return Err(Error::BoundExceeded {
                what: "field order",
                got: q,
                bound: bound as u128,
            });
        }
    }
    Ok(())
}

impl FieldCtx {
    fn build(p: u64, k: u32, modulus: Vec<u64>) -> Result<FieldCtx> {
        let q = p.pow(k);
        // find the smallest generator of the multiplicative group
        let factors = prime_factors(q - 1);
        let pow_code = |base: u64, e: u64| -> u64 {
            let mut r = unpack(1, p, k);
            let mut b = unpack(base, p, k);
            let mut e = e;
            while e > 0 {
                if e & 1 == 1 {
                    r = poly_mul_mod(&r, &b, &modulus, p);
                }
                b = poly_mul_mod(&b, &b, &modulus, p);
                e >>= 1;
            }
            pack(&r, p)
        };
        let mut generator = 0u64;
        for c in 1..q {
            if q == 2 || factors.iter().all(|&r| pow_code(c, (q - 1) / r) != 1) {
                generator = c;
                break;
            }
        }
        assert!(generator != 0, "multiplicative group generator not found");

        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let g = unpack(generator, p, k);
        let mut cur = unpack(1, p, k);
        for i in 0..(q - 1) as usize {
            let code = pack(&cur, p);
            exp[i] = code as u32;
            log[code as usize] = i as u32;
            cur = poly_mul_mod(&cur, &g, &modulus, p);
        }
        assert_eq!(pack(&cur, p), 1, "generator order must be q - 1");

        Ok(FieldCtx {
            id: NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed),
            p,
            k,
            q,
            modulus,
            exp,
            log,
            generator: generator as u32,
        })
    }

    /// Modulus coefficients, ascending degree, length `k + 1`.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// A generator of the multiplicative group.
    pub fn generator(&self) -> Fq {
        self.el(self.generator as u64)
    }

    #[inline]
    fn owned(&self, x: Fq) -> u32 {
        debug_assert_eq!(x.fid, self.id, "element used with a foreign FieldCtx");
        x.code
    }

    #[inline]
    fn mk(&self, code: u64) -> Fq {
        debug_assert!(code < self.q);
        Fq {
            code: code as u32,
            fid: self.id,
        }
    }

    /// Element with the given canonical code.
    pub fn el(&self, code: u64) -> Fq {
        assert!(
            code < self.q,
            "code {} out of range for q = {}",
            code,
            self.q
        );
        self.mk(code)
    }

    pub fn zero(&self) -> Fq {
        self.mk(0)
    }

    pub fn one(&self) -> Fq {
        self.mk(1)
    }

    /// All q elements in canonical code order.
    pub fn elems(&self) -> impl Iterator<Item = Fq> + '_ {
        (0..self.q).map(move |c| self.mk(c))
    }

    /// The q - 1 nonzero elements in canonical code order.
    pub fn units(&self) -> impl Iterator<Item = Fq> + '_ {
        (1..self.q).map(move |c| self.mk(c))
    }

    pub fn is_zero(&self, x: Fq) -> bool {
        self.owned(x) == 0
    }

    pub fn add(&self, x: Fq, y: Fq) -> Fq {
        let (a, b) = (self.owned(x) as u64, self.owned(y) as u64);
        if self.k == 1 {
            return self.mk((a + b) % self.p);
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.k {
            out += (a % self.p + b % self.p) % self.p * mult;
            mult *= self.p;
            a /= self.p;
            b /= self.p;
        }
        self.mk(out)
    }

    pub fn neg(&self, x: Fq) -> Fq {
        let a = self.owned(x) as u64;
        if self.k == 1 {
            return self.mk((self.p - a) % self.p);
        }
        let mut a = a;
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.k {
            out += (self.p - a % self.p) % self.p * mult;
            mult *= self.p;
            a /= self.p;
        }
        self.mk(out)
    }

    pub fn sub(&self, x: Fq, y: Fq) -> Fq {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Fq, y: Fq) -> Fq {
        let (a, b) = (self.owned(x), self.owned(y));
        if a == 0 || b == 0 {
            return self.mk(0);
        }
        let n = self.q - 1;
        let i = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n;
        self.mk(self.exp[i as usize] as u64)
    }

    /// Multiplicative inverse. Inverting zero is a caller error.
    pub fn inv(&self, x: Fq) -> Fq {
        let a = self.owned(x);
        assert!(a != 0, "inversion of zero");
        let n = self.q - 1;
        let i = (n - self.log[a as usize] as u64) % n;
        self.mk(self.exp[i as usize] as u64)
    }

    /// Binary exponentiation through the discrete-log tables; negative
    /// exponents go through the inverse and require `x != 0`.
    pub fn pow(&self, x: Fq, e: i64) -> Fq {
        let a = self.owned(x);
        if a == 0 {
            assert!(e >= 0, "inversion of zero");
            return if e == 0 { self.mk(1) } else { self.mk(0) };
        }
        let n = (self.q - 1) as i128;
        let i = ((self.log[a as usize] as i128 * e as i128) % n + n) % n;
        self.mk(self.exp[i as usize] as u64)
    }

    /// The Frobenius endomorphism `x -> x^p`.
    pub fn frobenius(&self, x: Fq) -> Fq {
        self.pow(x, self.p as i64)
    }

    /// Discrete logarithm of a nonzero element with respect to the chosen
    /// generator.
    pub fn dlog(&self, x: Fq) -> u64 {
        let a = self.owned(x);
        assert!(a != 0, "dlog of zero");
        self.log[a as usize] as u64
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: Fq) -> u64 {
        let a = self.owned(x);
        assert!(a != 0);
        let n = self.q - 1;
        n / num_integer::gcd(self.log[a as usize] as u64, n)
    }
}

/// Number of l-th roots of unity, counted by enumeration.
pub fn unity_root_count(ctx: &FieldCtx, l: u64) -> u64 {
    assert!(l >= 1);
    ctx.units()
        .filter(|&x| ctx.pow(x, l as i64) == ctx.one())
        .count() as u64
}

/// Independent fast path: `gcd(l, q - 1)`.
pub fn unity_root_count_gcd(ctx: &FieldCtx, l: u64) -> u64 {
    num_integer::gcd(l, ctx.q - 1)
}

/// The set `Omega_{m,n} = {t in F_q* : t^{nm} = 1, t^n != 1, t^m != 1}`,
/// in ascending code order.
pub fn omega_set(ctx: &FieldCtx, m: u64, n: u64) -> Result<Vec<Fq>> {
    if num_integer::gcd(m, n) != 1 {
        return Err(Error::NotCoprime(m, n));
    }
    let one = ctx.one();
    Ok(ctx
        .units()
        .filter(|&t| {
            ctx.pow(t, (n * m) as i64) == one
                && ctx.pow(t, n as i64) != one
                && ctx.pow(t, m as i64) != one
        })
        .collect())
}

/// `F_{q^2}` together with the embedding of the base field.
pub struct QuadExt {
    pub ext: FieldCtx,
    embed: Vec<u32>,
}

impl QuadExt {
    /// Construct the quadratic extension of `base` and locate the subfield.
    pub fn build(base: &FieldCtx) -> Result<QuadExt> {
        let ext = make_field_bounded(base.p, 2 * base.k, base.q.saturating_mul(base.q))?;
        // deterministic root of the base modulus inside the extension
        let root = ext
            .elems()
            .find(|&r| {
                let mut acc = ext.zero();
                // Horner, highest coefficient first
                for &c in base.modulus().iter().rev() {
                    acc = ext.add(ext.mul(acc, r), ext.el(c));
                }
                ext.is_zero(acc)
            })
            .expect("base modulus splits in the quadratic extension");
        let mut embed = vec![0u32; base.q as usize];
        for x in base.elems() {
            let digits = unpack(x.code(), base.p, base.k);
            let mut acc = ext.zero();
            for &d in digits.iter().rev() {
                acc = ext.add(ext.mul(acc, root), ext.el(d));
            }
            embed[x.code() as usize] = acc.code() as u32;
        }
        Ok(QuadExt { ext, embed })
    }

    pub fn embed(&self, base: &FieldCtx, x: Fq) -> Fq {
        self.ext.el(self.embed[base.owned(x) as usize] as u64)
    }

    /// True when `y` lies in the embedded base field, i.e. is Frobenius-fixed
    /// under `y -> y^q`.
    pub fn is_rational(&self, base: &FieldCtx, y: Fq) -> bool {
        self.ext.pow(y, base.q as i64) == y
    }

    /// Preimage under the embedding, if rational.
    pub fn retract(&self, base: &FieldCtx, y: Fq) -> Option<Fq> {
        // q is desk-scale; a linear scan keeps this dependency-free
        let target = y.code() as u32;
        self.embed
            .iter()
            .position(|&c| c == target)
            .map(|i| base.el(i as u64))
    }
}
