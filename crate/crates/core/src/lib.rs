//! Arakelov-style heights over finitely generated fields `Q(z_1..z_d)`.

pub mod arakelov;
pub mod chow;
pub mod error;
pub mod fsquad;
pub mod heights;
pub mod isogeny;
pub mod northcott;
pub mod polyring;
pub mod symbolic;

pub use arakelov::{
    intersection_degree, BaseFactor, Engine, EngineConfig, IntersectionProblem, LinearForm,
    MetrizedBundle, RigorousValue, SectionClass,
};
pub use chow::{BinaryForm, ChowForm, PointSpec, ZeroCycle};
pub use error::{Error, Result};
pub use fsquad::{Integrand, QuadCache, QuadConfig, QuadResult, Quadrature};
pub use heights::{FairlyLargeCertificate, Polarization, PolarizationName};
pub use isogeny::{FormalClass, PairingTable};
pub use northcott::{NorthcottConfig, SearchBox};
pub use polyring::{normalize, Degree, MultiPoly, ProjPoint};
pub use symbolic::LogLinear;
