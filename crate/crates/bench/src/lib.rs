//! Fixed inputs shared by the benchmarks.

use arakheight::polyring::parse_tuple;
use arakheight::{MultiPoly, ProjPoint};

pub fn point(s: &str) -> ProjPoint {
    ProjPoint::new(parse_tuple(s, None).expect("fixture parses")).expect("fixture is a point")
}

/// Points over `Q(z1)` of increasing degree.
pub fn line_points() -> Vec<ProjPoint> {
    ["(1, z1)", "(z1 + 2, 3*z1 - 1)", "(z1^3 - 2, 5*z1^2 + z1, 7)"]
        .iter()
        .map(|s| point(s))
        .collect()
}

/// Points over `Q(z1, z2)`.
pub fn plane_points() -> Vec<ProjPoint> {
    ["(1, z1*z2)", "(z1 + z2, z1*z2 - 3)"].iter().map(|s| point(s)).collect()
}

/// A raw tuple with a common polynomial and integer factor to strip.
pub fn reducible_tuple() -> Vec<MultiPoly> {
    parse_tuple("(6*(z1 + z2)^2*(z1 - 1), 4*(z1 + z2)^2*z2^3, 10*(z1 + z2)^2)", None).expect("fixture parses")
}
