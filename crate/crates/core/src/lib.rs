//! Certification toolkit for the spectral inequalities in the equivariant
//! Yamabe problem: exact coefficient families in the dimension `n`, interval
//! intersection certificates, bubble-integral identities and a quadrature
//! oracle on the round 2-sphere.

pub mod algebra;
pub mod certify;
pub mod integrals;
pub mod spectral;
pub mod sphere;
