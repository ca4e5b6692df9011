use crate::airy::AiryParam;
use crate::bessel::BesselParam;
use crate::diffop::DiffOp;

/// Base operator of a Darboux plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Bessel(BesselParam),
    Airy(AiryParam),
}

impl Family {
    pub fn n(&self) -> u32 {
        match self {
            Family::Bessel(b) => b.n(),
            Family::Airy(a) => a.n(),
        }
    }

    pub fn op(&self) -> DiffOp {
        match self {
            Family::Bessel(b) => b.op(),
            Family::Airy(a) => a.op(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Bessel(_) => "bessel",
            Family::Airy(_) => "airy",
        }
    }

    /// Parameter of the adjoint plane.
    pub fn a_involution(&self) -> Family {
        match self {
            Family::Bessel(b) => Family::Bessel(b.a_involution()),
            Family::Airy(a) => Family::Airy(a.a_involution()),
        }
    }

    /// Parameter after x ↦ −x (Bessel operators are invariant).
    pub fn s_involution(&self) -> Family {
        match self {
            Family::Bessel(b) => Family::Bessel(b.clone()),
            Family::Airy(a) => Family::Airy(a.s_involution()),
        }
    }

    pub fn is_bessel(&self) -> bool {
        matches!(self, Family::Bessel(_))
    }
}
