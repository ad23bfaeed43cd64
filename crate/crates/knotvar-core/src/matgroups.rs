//! Elements, arithmetic, enumeration, and canonical encoding for `GL1`,
//! `GL2`, `AGL1`, `AGL2` over a [`FieldCtx`].
//!
//! An affine element is stored as a `(linear part, translation)` pair rather
//! than an `(r+1) x (r+1)` matrix; powering uses the block recursion
//! `alpha_{k+1} = alpha + A0 alpha_k`. Matrices are row-major flat arrays.
//! The canonical encoding packs translation digits below the linear digits,
//! so enumeration in code order walks translations fastest.

use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, Fq};
use crate::max_group_order;

/// Which of the four matrix groups over a fixed field.
#[derive(Copy, Clone, Debug)]
pub struct GroupDescriptor<'a> {
    pub ctx: &'a FieldCtx,
    pub rank: u8,
    pub affine: bool,
}

/// Group element: invertible `rank x rank` linear part plus a translation
/// vector when affine. Unused slots hold zero.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    pub lin: [Fq; 4],
    pub tr: [Fq; 2],
    rank: u8,
    affine: bool,
}

// ---- 2x2 matrix helpers over a FieldCtx (row-major [a, b, c, d]) ----

pub fn mat2_identity(ctx: &FieldCtx) -> [Fq; 4] {
    [ctx.one(), ctx.zero(), ctx.zero(), ctx.one()]
}

pub fn mat2_mul(ctx: &FieldCtx, x: &[Fq; 4], y: &[Fq; 4]) -> [Fq; 4] {
    [
        ctx.add(ctx.mul(x[0], y[0]), ctx.mul(x[1], y[2])),
        ctx.add(ctx.mul(x[0], y[1]), ctx.mul(x[1], y[3])),
        ctx.add(ctx.mul(x[2], y[0]), ctx.mul(x[3], y[2])),
        ctx.add(ctx.mul(x[2], y[1]), ctx.mul(x[3], y[3])),
    ]
}

pub fn mat2_det(ctx: &FieldCtx, x: &[Fq; 4]) -> Fq {
    ctx.sub(ctx.mul(x[0], x[3]), ctx.mul(x[1], x[2]))
}

pub fn mat2_pow(ctx: &FieldCtx, x: &[Fq; 4], mut e: u64) -> [Fq; 4] {
    let mut r = mat2_identity(ctx);
    let mut b = *x;
    while e > 0 {
        if e & 1 == 1 {
            r = mat2_mul(ctx, &r, &b);
        }
        b = mat2_mul(ctx, &b, &b);
        e >>= 1;
    }
    r
}

pub fn mat2_is_scalar(ctx: &FieldCtx, x: &[Fq; 4]) -> bool {
    ctx.is_zero(x[1]) && ctx.is_zero(x[2]) && x[0] == x[3]
}

impl<'a> GroupDescriptor<'a> {
    pub fn new(ctx: &'a FieldCtx, rank: u8, affine: bool) -> Self {
        assert!(rank == 1 || rank == 2, "only ranks 1 and 2 are supported");
        GroupDescriptor { ctx, rank, affine }
    }

    pub fn gl1(ctx: &'a FieldCtx) -> Self {
        Self::new(ctx, 1, false)
    }
    pub fn gl2(ctx: &'a FieldCtx) -> Self {
        Self::new(ctx, 2, false)
    }
    pub fn agl1(ctx: &'a FieldCtx) -> Self {
        Self::new(ctx, 1, true)
    }
    pub fn agl2(ctx: &'a FieldCtx) -> Self {
        Self::new(ctx, 2, true)
    }

    pub fn name(&self) -> &'static str {
        match (self.rank, self.affine) {
            (1, false) => "GL1",
            (2, false) => "GL2",
            (1, true) => "AGL1",
            _ => "AGL2",
        }
    }

    /// Group order: `|GL1| = q-1`, `|GL2| = (q^2-1)(q^2-q)`,
    /// `|AGLr| = q^r |GLr|`.
    pub fn order(&self) -> u128 {
        let q = self.ctx.q as u128;
        let lin = match self.rank {
            1 => q - 1,
            _ => (q * q - 1) * (q * q - q),
        };
        if self.affine {
            q.pow(self.rank as u32) * lin
        } else {
            lin
        }
    }

    pub fn identity(&self) -> GroupElement {
        let ctx = self.ctx;
        let mut lin = [ctx.one(), ctx.zero(), ctx.zero(), ctx.zero()];
        if self.rank == 2 {
            lin[3] = ctx.one();
        }
        GroupElement {
            lin,
            tr: [ctx.zero(), ctx.zero()],
            rank: self.rank,
            affine: self.affine,
        }
    }

    /// Element from a linear part (and translation, for affine groups).
    /// Slots beyond the group shape are normalized to zero so that element
    /// equality is structural.
    pub fn element(&self, lin: [Fq; 4], tr: [Fq; 2]) -> GroupElement {
        debug_assert!(
            !self.ctx.is_zero(self.lin_det(&lin)),
            "singular linear part"
        );
        self.normalized(lin, tr)
    }

    fn normalized(&self, mut lin: [Fq; 4], mut tr: [Fq; 2]) -> GroupElement {
        let z = self.ctx.zero();
        if self.rank == 1 {
            lin[1] = z;
            lin[2] = z;
            lin[3] = z;
        }
        if !self.affine {
            tr = [z, z];
        } else if self.rank == 1 {
            tr[1] = z;
        }
        GroupElement {
            lin,
            tr,
            rank: self.rank,
            affine: self.affine,
        }
    }

    fn lin_det(&self, lin: &[Fq; 4]) -> Fq {
        match self.rank {
            1 => lin[0],
            _ => mat2_det(self.ctx, lin),
        }
    }

    fn check(&self, g: &GroupElement) {
        assert!(
            g.rank == self.rank && g.affine == self.affine,
            "group descriptor mismatch"
        );
    }

    /// Group product. For affine elements
    /// `(alpha, A) * (beta, B) = (alpha + A beta, A B)`.
    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.check(g);
        self.check(h);
        let ctx = self.ctx;
        let lin = match self.rank {
            1 => {
                let mut l = g.lin;
                l[0] = ctx.mul(g.lin[0], h.lin[0]);
                l
            }
            _ => mat2_mul(ctx, &g.lin, &h.lin),
        };
        let tr = if self.affine {
            match self.rank {
                1 => [ctx.add(g.tr[0], ctx.mul(g.lin[0], h.tr[0])), ctx.zero()],
                _ => [
                    ctx.add(
                        g.tr[0],
                        ctx.add(ctx.mul(g.lin[0], h.tr[0]), ctx.mul(g.lin[1], h.tr[1])),
                    ),
                    ctx.add(
                        g.tr[1],
                        ctx.add(ctx.mul(g.lin[2], h.tr[0]), ctx.mul(g.lin[3], h.tr[1])),
                    ),
                ],
            }
        } else {
            g.tr
        };
        self.normalized(lin, tr)
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        self.check(g);
        let ctx = self.ctx;
        let lin_inv = match self.rank {
            1 => {
                let mut l = g.lin;
                l[0] = ctx.inv(g.lin[0]);
                l
            }
            _ => {
                let di = ctx.inv(mat2_det(ctx, &g.lin));
                [
                    ctx.mul(g.lin[3], di),
                    ctx.neg(ctx.mul(g.lin[1], di)),
                    ctx.neg(ctx.mul(g.lin[2], di)),
                    ctx.mul(g.lin[0], di),
                ]
            }
        };
        let inv = self.normalized(lin_inv, [ctx.zero(), ctx.zero()]);
        if !self.affine {
            return inv;
        }
        // (alpha, A)^-1 = (-A^-1 alpha, A^-1)
        let mut id_lin = [ctx.one(), ctx.zero(), ctx.zero(), ctx.zero()];
        if self.rank == 2 {
            id_lin[3] = ctx.one();
        }
        let shifted = self.normalized(id_lin, [ctx.neg(g.tr[0]), ctx.neg(g.tr[1])]);
        self.mul(&inv, &shifted)
    }

    /// Binary exponentiation; `g^0` is the identity.
    pub fn pow(&self, g: &GroupElement, mut e: u64) -> GroupElement {
        self.check(g);
        let mut r = self.identity();
        let mut b = *g;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    fn tr_slots(&self) -> u32 {
        if self.affine {
            self.rank as u32
        } else {
            0
        }
    }

    fn lin_slots(&self) -> u32 {
        (self.rank as u32).pow(2)
    }

    /// Canonical injective encoding into `[0, q^(r^2 + r))`.
    pub fn encode(&self, g: &GroupElement) -> u64 {
        self.check(g);
        let q = self.ctx.q;
        let mut lin_code = 0u64;
        for i in (0..self.lin_slots() as usize).rev() {
            lin_code = lin_code * q + g.lin[i].code();
        }
        let mut code = lin_code;
        for i in (0..self.tr_slots() as usize).rev() {
            code = code * q + g.tr[i].code();
        }
        code
    }

    /// Inverse of [`encode`](Self::encode) on the enumeration image.
    pub fn decode(&self, code: u64) -> Result<GroupElement> {
        let ctx = self.ctx;
        let q = ctx.q;
        let mut rest = code;
        let mut tr = [ctx.zero(), ctx.zero()];
        for slot in tr.iter_mut().take(self.tr_slots() as usize) {
            *slot = ctx.el(rest % q);
            rest /= q;
        }
        let mut lin = [ctx.zero(), ctx.zero(), ctx.zero(), ctx.zero()];
        for slot in lin.iter_mut().take(self.lin_slots() as usize) {
            *slot = ctx.el(rest % q);
            rest /= q;
        }
        if rest != 0 {
            return Err(Error::InvalidCode(code));
        }
        if ctx.is_zero(self.lin_det(&lin)) {
            return Err(Error::InvalidCode(code));
        }
        Ok(GroupElement {
            lin,
            tr,
            rank: self.rank,
            affine: self.affine,
        })
    }

    /// Codes of the invertible linear parts, ascending. Enumeration of GL2 is
    /// by rejection over all 4-tuples with nonzero determinant.
    pub fn linear_codes(&self) -> impl Iterator<Item = u64> + 'a {
        let ctx = self.ctx;
        let rank = self.rank;
        let q = ctx.q;
        let span = q.pow(self.lin_slots());
        (0..span).filter(move |&lc| {
            if rank == 1 {
                lc != 0
            } else {
                let m = [
                    ctx.el(lc % q),
                    ctx.el(lc / q % q),
                    ctx.el(lc / (q * q) % q),
                    ctx.el(lc / (q * q * q) % q),
                ];
                !ctx.is_zero(mat2_det(ctx, &m))
            }
        })
    }

    /// Every element exactly once, in ascending canonical code order.
    pub fn elements(&self) -> Result<impl Iterator<Item = GroupElement> + 'a> {
        let bound = max_group_order() as u128;
        if self.order() > bound {
            return Err(Error::BoundExceeded {
                what: "group order",
                got: self.order(),
                bound,
            });
        }
        let me = *self;
        let q = self.ctx.q;
        let tr_span = q.pow(self.tr_slots());
        Ok(self.linear_codes().flat_map(move |lc| {
            (0..tr_span).map(move |tc| {
                me.decode(lc * tr_span + tc)
                    .expect("enumeration emits valid codes")
            })
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;

    #[test]
    fn orders_by_enumeration() {
        let f7 = make_field(7, 1).unwrap();
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(GroupDescriptor::agl1(&f7).elements().unwrap().count(), 42);
        assert_eq!(GroupDescriptor::gl2(&f3).elements().unwrap().count(), 48);
        assert_eq!(GroupDescriptor::agl2(&f3).elements().unwrap().count(), 432);
        for d in [
            GroupDescriptor::gl1(&f7),
            GroupDescriptor::gl2(&f3),
            GroupDescriptor::agl1(&f7),
            GroupDescriptor::agl2(&f3),
        ] {
            assert_eq!(d.elements().unwrap().count() as u128, d.order());
        }
    }

    #[test]
    fn affine_multiplication() {
        let f7 = make_field(7, 1).unwrap();
        let d = GroupDescriptor::agl1(&f7);
        let g = d.element(
            [f7.el(3), f7.zero(), f7.zero(), f7.zero()],
            [f7.el(2), f7.zero()],
        );
        let h = d.element(
            [f7.el(2), f7.zero(), f7.zero(), f7.zero()],
            [f7.el(5), f7.zero()],
        );
        let gh = d.mul(&g, &h);
        assert_eq!(gh.lin[0], f7.el(6));
        assert_eq!(gh.tr[0], f7.el(3)); // 2 + 3*5 = 17 = 3 mod 7

        assert_eq!(d.mul(&g, &d.identity()), g);
        assert_eq!(d.mul(&g, &d.inverse(&g)), d.identity());
    }

    #[test]
    fn affine_powers_follow_phi() {
        let f7 = make_field(7, 1).unwrap();
        let d = GroupDescriptor::agl1(&f7);
        let g = d.element(
            [f7.el(2), f7.zero(), f7.zero(), f7.zero()],
            [f7.one(), f7.zero()],
        );
        let g3 = d.pow(&g, 3);
        assert_eq!(g3.lin[0], f7.one()); // 2^3 = 8 = 1
        assert_eq!(g3.tr[0], f7.zero()); // Phi_3(2) = 1 + 2 + 4 = 0 mod 7
        assert_eq!(d.pow(&g, 0), d.identity());
    }

    #[test]
    fn enumeration_bound() {
        let f64 = make_field(2, 6).unwrap();
        let d = GroupDescriptor::agl2(&f64);
        assert!(d.order() > 1 << 30);
        assert!(d.elements().is_err());
        assert!(GroupDescriptor::agl1(&f64).elements().is_ok());
    }

    #[test]
    fn encode_decode_roundtrip() {
        let f5 = make_field(5, 1).unwrap();
        let d = GroupDescriptor::gl2(&f5);
        let mut seen = std::collections::HashSet::new();
        for g in d.elements().unwrap() {
            let code = d.encode(&g);
            assert!(seen.insert(code), "codes must be distinct");
            assert_eq!(d.decode(code).unwrap(), g);
        }
        assert_eq!(seen.len() as u128, d.order());
        assert!(d.decode(0).is_err()); // zero matrix is not invertible

        let f3 = make_field(3, 1).unwrap();
        let d2 = GroupDescriptor::agl2(&f3);
        let codes: std::collections::HashSet<u64> =
            d2.elements().unwrap().map(|g| d2.encode(&g)).collect();
        assert_eq!(codes.len(), 432);
        let id_code = d2.encode(&d2.identity());
        assert_eq!(d2.decode(id_code).unwrap(), d2.identity());
    }
}
