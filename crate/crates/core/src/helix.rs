//! Symbolic sheaf calculus for the simples helix.
//!
//! Objects are `base ⊗ O(twist) [shift]`. Normal forms absorb twists of
//! `O_C(a)` into `a`, rewrite `ω_C = O_C(−2)` and `ω_{2C} = O_{2C}(−1)`,
//! so equality of objects is equality of normal forms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{for_length, reduce_index, HelixNumerics};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Base {
    /// `O_C(a)`.
    CurveTwist(i64),
    /// `O_{kC}`.
    Thick(u32),
    /// `ω_{kC}`.
    DualThick(u32),
    /// The extension `O_{3C} → Z → O_{2C}`.
    Zed,
    /// `Z^ω`, the dual partner of `Z`.
    ZedOmega,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SheafExpr {
    pub base: Base,
    pub twist: i64,
    pub shift: i64,
}

/// Class in the rank-2 lattice with basis `([O_C(−1)], [O_pt])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct KClass {
    pub c: i64,
    pub p: i64,
}

impl KClass {
    pub const fn new(c: i64, p: i64) -> Self {
        KClass { c, p }
    }

    pub fn shift(self, n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            self
        } else {
            -self
        }
    }

    pub fn twist(self, m: i64) -> Self {
        KClass::new(self.c, self.p + m * self.c)
    }

    pub fn dual(self) -> Self {
        KClass::new(-self.c, self.p)
    }

    pub fn scale(self, k: i64) -> Self {
        KClass::new(k * self.c, k * self.p)
    }
}

impl std::ops::Add for KClass {
    type Output = KClass;
    fn add(self, o: KClass) -> KClass {
        KClass::new(self.c + o.c, self.p + o.p)
    }
}

impl std::ops::Neg for KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        KClass::new(-self.c, -self.p)
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c, self.p)
    }
}

impl SheafExpr {
    /// Builds `base(twist)[shift]` in normal form.
    pub fn new(base: Base, twist: i64, shift: i64) -> Self {
        SheafExpr { base, twist, shift }.normalize()
    }

    pub fn of(base: Base) -> Self {
        SheafExpr::new(base, 0, 0)
    }

    pub fn curve(a: i64) -> Self {
        SheafExpr::of(Base::CurveTwist(a))
    }

    pub fn thick(k: u32) -> Self {
        SheafExpr::of(Base::Thick(k))
    }

    pub fn dual_thick(k: u32) -> Self {
        SheafExpr::of(Base::DualThick(k))
    }

    pub fn zed() -> Self {
        SheafExpr::of(Base::Zed)
    }

    pub fn zed_omega() -> Self {
        SheafExpr::of(Base::ZedOmega)
    }

    /// Builds without normalizing; used to test that rewrites preserve class.
    pub fn raw(base: Base, twist: i64, shift: i64) -> Self {
        SheafExpr { base, twist, shift }
    }

    pub fn normalize(self) -> Self {
        let SheafExpr { base, twist, shift } = self;
        let (base, twist) = match base {
            Base::CurveTwist(a) => (Base::CurveTwist(a + twist), 0),
            Base::Thick(1) => (Base::CurveTwist(twist), 0),
            Base::DualThick(1) => (Base::CurveTwist(twist - 2), 0),
            Base::DualThick(2) => (Base::Thick(2), twist - 1),
            b => (b, twist),
        };
        SheafExpr { base, twist, shift }
    }

    pub fn twisted(self, m: i64) -> Self {
        SheafExpr::new(self.base, self.twist + m, self.shift)
    }

    pub fn shifted(self, n: i64) -> Self {
        SheafExpr::new(self.base, self.twist, self.shift + n)
    }

    /// Grothendieck duality on generators, extended by
    /// `D(F ⊗ O(m)) = D(F) ⊗ O(−m)` and `D(F[n]) = D(F)[−n]`.
    pub fn dualize(self) -> Self {
        let e = self.normalize();
        let (base, twist) = match e.base {
            Base::CurveTwist(a) => (Base::CurveTwist(-2 - a), 0),
            Base::Thick(k) => (Base::DualThick(k), 0),
            Base::DualThick(k) => (Base::Thick(k), 0),
            Base::Zed => (Base::ZedOmega, 0),
            Base::ZedOmega => (Base::Zed, 0),
        };
        SheafExpr::new(base, twist - e.twist, 1 - e.shift)
    }

    /// Class in K₀, computed on the expression as written (normalized or not).
    pub fn kclass(self) -> KClass {
        let base = match self.base {
            Base::CurveTwist(a) => KClass::new(1, a + 1),
            Base::Thick(k) => KClass::new(i64::from(k), 1),
            Base::DualThick(k) => KClass::new(i64::from(k), -1),
            Base::Zed => KClass::new(5, 2),
            Base::ZedOmega => KClass::new(5, -2),
        };
        base.twist(self.twist).shift(self.shift)
    }

    /// Checks that the object makes sense for length ℓ.
    pub fn check_for_length(self, ell: u8) -> Result<Self> {
        let ok = match self.base {
            Base::Thick(k) | Base::DualThick(k) => (1..=u32::from(ell)).contains(&k),
            Base::Zed | Base::ZedOmega => ell == 5 || ell == 6,
            Base::CurveTwist(_) => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::NotInHelix(format!("{self} (ℓ={ell})")))
        }
    }

    fn json_base(&self) -> (&'static str, Option<i64>) {
        match self.base {
            Base::CurveTwist(a) => ("O_C", Some(a)),
            Base::Thick(k) => ("O_kC", Some(i64::from(k))),
            Base::DualThick(k) => ("w_kC", Some(i64::from(k))),
            Base::Zed => ("Z", None),
            Base::ZedOmega => ("Z^w", None),
        }
    }
}

impl fmt::Display for SheafExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            Base::CurveTwist(0) => write!(f, "O_C")?,
            Base::CurveTwist(a) => write!(f, "O_C({a})")?,
            Base::Thick(k) => write!(f, "O_{{{k}C}}")?,
            Base::DualThick(k) => write!(f, "w_{{{k}C}}")?,
            Base::Zed => write!(f, "Z")?,
            Base::ZedOmega => write!(f, "Z^w")?,
        }
        if self.twist != 0 {
            write!(f, "({})", self.twist)?;
        }
        if self.shift != 0 {
            write!(f, "[{}]", self.shift)?;
        }
        Ok(())
    }
}

impl Serialize for SheafExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let (base, k) = self.json_base();
        let mut st = s.serialize_struct("SheafExpr", 4)?;
        st.serialize_field("base", base)?;
        st.serialize_field("k_or_a", &k)?;
        st.serialize_field("twist", &self.twist)?;
        st.serialize_field("shift", &self.shift)?;
        st.end()
    }
}

/// The simples `S_0..S_{N−1}` for length ℓ.
pub fn base_region(ell: u8) -> Vec<SheafExpr> {
    let l = u32::from(ell);
    let has_z = ell == 5 || ell == 6;
    let mut out = vec![SheafExpr::curve(-1)];
    if ell == 1 {
        return out;
    }
    for k in (3..=l).rev() {
        out.push(SheafExpr::thick(k));
    }
    if has_z {
        out.push(SheafExpr::zed());
    }
    out.push(SheafExpr::thick(2));
    if has_z {
        out.push(SheafExpr::zed_omega().twisted(1));
    }
    for k in 3..=l {
        out.push(SheafExpr::dual_thick(k).twisted(1));
    }
    out
}

/// Simples helix for a fixed length; `S_{i+N} = S_i ⊗ O(1)`.
#[derive(Debug, Clone)]
pub struct SimplesHelix {
    pub numerics: HelixNumerics,
    region: Vec<SheafExpr>,
}

impl SimplesHelix {
    pub fn new(ell: i64) -> Result<Self> {
        let numerics = for_length(ell)?;
        let region = base_region(numerics.ell);
        if region.len() != numerics.period {
            return Err(Error::Invariant(format!(
                "ℓ={ell}: base region has {} simples, period is {}",
                region.len(),
                numerics.period
            )));
        }
        Ok(SimplesHelix { numerics, region })
    }

    pub fn ell(&self) -> u8 {
        self.numerics.ell
    }

    pub fn period(&self) -> usize {
        self.numerics.period
    }

    /// `S_i` by translation from the base region.
    pub fn simple_at(&self, i: i64) -> SheafExpr {
        let n = self.period() as i64;
        self.region[reduce_index(i, self.period())].twisted(i.div_euclid(n))
    }

    /// `S_{−i}` computed as `D(S_i)[−1]`.
    pub fn simple_by_duality(&self, neg: i64) -> SheafExpr {
        self.simple_at(-neg).dualize().shifted(-1)
    }

    /// Index of `e` in `0..N` if `e` is in the base region up to twist.
    pub fn position_up_to_twist(&self, e: SheafExpr) -> Option<(usize, i64)> {
        let e = e.normalize();
        self.region.iter().enumerate().find_map(|(i, s)| {
            if s.shift != e.shift {
                return None;
            }
            match (s.base, e.base) {
                (Base::CurveTwist(a), Base::CurveTwist(b)) => Some((i, b - a)),
                (x, y) if x == y => Some((i, e.twist - s.twist)),
                _ => None,
            }
        })
    }

    pub fn tilt_descriptor(&self, i: i64) -> TiltDescriptor {
        let a = self.simple_at(i - 1).shifted(1);
        let b = self.simple_at(i);
        let (slot0, slot1) = if i.rem_euclid(2) == 0 { (a, b) } else { (b, a) };
        TiltDescriptor {
            index: i,
            slot0,
            slot1,
            projective_ranks: (self.numerics.rank_at(i - 1), self.numerics.rank_at(i)),
        }
    }

    /// For `i < 0` the descriptor obtained by dualizing the one at `1 − i`.
    pub fn tilt_descriptor_by_duality(&self, i: i64) -> TiltDescriptor {
        let t = self.tilt_descriptor(1 - i);
        TiltDescriptor {
            index: i,
            slot0: t.slot0.dualize(),
            slot1: t.slot1.dualize(),
            projective_ranks: (self.numerics.rank_at(i - 1), self.numerics.rank_at(i)),
        }
    }

    pub fn mutation_class_check(&self, i: i64) -> MutationCheck {
        let h = self.tilt_descriptor(i);
        let g = self.tilt_descriptor(i + 1);
        let n = self.numerics.n_at(i);
        let (h0, h1) = (h.slot0.kclass(), h.slot1.kclass());
        let (g0, g1) = (g.slot0.kclass(), g.slot1.kclass());
        let (e0, e1) = if i.rem_euclid(2) == 0 { (g0 + g1.scale(n), -g1) } else { (-g0, g1 + g0.scale(n)) };
        let ok = h0 == e0 && h1 == e1;
        let expansion = format!("i={i}, n_i={n}: [{}]={h0} vs {e0}; [{}]={h1} vs {e1}", h.slot0, h.slot1);
        MutationCheck { ok, expansion }
    }

    /// Coefficient matrix expressing heart `i`'s simple classes in heart
    /// `i+1`'s basis (columns = slot0, slot1), found by solving over ℤ.
    pub fn change_of_basis(&self, i: i64) -> Option<[[i64; 2]; 2]> {
        let h = self.tilt_descriptor(i);
        let g = self.tilt_descriptor(i + 1);
        let (g0, g1) = (g.slot0.kclass(), g.slot1.kclass());
        let det = g0.c * g1.p - g1.c * g0.p;
        if det.abs() != 1 {
            return None;
        }
        let solve = |v: KClass| ((v.c * g1.p - g1.c * v.p) * det, (g0.c * v.p - v.c * g0.p) * det);
        let (a, b) = solve(h.slot0.kclass());
        let (c, d) = solve(h.slot1.kclass());
        Some([[a, c], [b, d]])
    }

    pub fn duality_closure_check(&self, range: i64) -> Result<()> {
        let n = self.period() as i64;
        for i in -range..=range {
            let d = self.tilt_descriptor_by_duality(i);
            let t = self.tilt_descriptor(i);
            if (d.slot0, d.slot1) != (t.slot0, t.slot1) {
                return Err(Error::Invariant(format!(
                    "ℓ={}: D(heart {}) = ({}, {}) but heart {i} = ({}, {})",
                    self.ell(),
                    1 - i,
                    d.slot0,
                    d.slot1,
                    t.slot0,
                    t.slot1
                )));
            }
            let u = self.tilt_descriptor(i + n);
            let (a, b) = (t.slot0.twisted(1), t.slot1.twisted(1));
            let expected = if n % 2 == 0 { (a, b) } else { (b, a) };
            if (u.slot0, u.slot1) != expected {
                return Err(Error::Invariant(format!(
                    "ℓ={}: heart {} is not heart {i} ⊗ O(1) with the expected slot order",
                    self.ell(),
                    i + n
                )));
            }
        }
        Ok(())
    }
}

/// Simples of the `i`-th tilted heart, in slot order, plus the ranks of
/// the projective pair `(V_{i−1}, V_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TiltDescriptor {
    pub index: i64,
    pub slot0: SheafExpr,
    pub slot1: SheafExpr,
    pub projective_ranks: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MutationCheck {
    pub ok: bool,
    pub expansion: String,
}

pub fn simple_at(i: i64, ell: i64) -> Result<SheafExpr> {
    Ok(SimplesHelix::new(ell)?.simple_at(i))
}

pub fn dualize(e: SheafExpr) -> SheafExpr {
    e.dualize()
}

pub fn kclass(e: SheafExpr) -> KClass {
    e.kclass()
}

pub fn tilt_descriptor(i: i64, ell: i64) -> Result<TiltDescriptor> {
    Ok(SimplesHelix::new(ell)?.tilt_descriptor(i))
}

pub fn mutation_class_check(i: i64, ell: i64) -> Result<MutationCheck> {
    Ok(SimplesHelix::new(ell)?.mutation_class_check(i))
}

pub fn duality_closure_check(ell: i64) -> Result<()> {
    let h = SimplesHelix::new(ell)?;
    h.duality_closure_check(3 * h.period() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        assert_eq!(SheafExpr::thick(3).to_string(), "O_{3C}");
        assert_eq!(SheafExpr::dual_thick(3).twisted(1).to_string(), "w_{3C}(1)");
        assert_eq!(SheafExpr::zed_omega().twisted(1).to_string(), "Z^w(1)");
        assert_eq!(SheafExpr::curve(-1).shifted(1).to_string(), "O_C(-1)[1]");
        assert_eq!(SheafExpr::curve(0).to_string(), "O_C");
    }

    #[test]
    fn normal_forms() {
        assert_eq!(SheafExpr::dual_thick(1), SheafExpr::curve(-2));
        assert_eq!(SheafExpr::dual_thick(2), SheafExpr::thick(2).twisted(-1));
        assert_eq!(SheafExpr::thick(1), SheafExpr::curve(0));
        assert_eq!(SheafExpr::curve(3).twisted(-4), SheafExpr::curve(-1));
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(SheafExpr::dual_thick(3).twisted(1)).unwrap();
        assert_eq!(v, serde_json::json!({"base": "w_kC", "k_or_a": 3, "twist": 1, "shift": 0}));
    }

    #[test]
    fn position_lookup() {
        let h = SimplesHelix::new(5).unwrap();
        assert_eq!(h.position_up_to_twist(SheafExpr::zed().twisted(3)), Some((4, 3)));
        assert_eq!(h.position_up_to_twist(SheafExpr::curve(4)), Some((0, 5)));
        assert_eq!(h.position_up_to_twist(SheafExpr::thick(2).shifted(1)), None);
    }
}
