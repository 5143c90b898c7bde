//! Kodaira fibre types, Euler numbers and the two lookup tables used for second-kind lines.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kodaira {
    Smooth,
    /// I_n, n ≥ 1. I_0 is `Smooth`.
    I(u32),
    II,
    III,
    IV,
    IVStar,
    I0Star,
    IIIStar,
    Pathological(String),
}

impl Kodaira {
    /// Euler number of the fibre.
    pub fn euler(&self) -> u32 {
        match self {
            Kodaira::Smooth => 0,
            Kodaira::I(n) => *n,
            Kodaira::II => 2,
            Kodaira::III => 3,
            Kodaira::IV => 4,
            Kodaira::IVStar => 8,
            Kodaira::I0Star => 6,
            Kodaira::IIIStar => 9,
            Kodaira::Pathological(_) => 0,
        }
    }

    /// Number of line components of a plane cubic fibre of this type.
    pub fn line_components(&self) -> usize {
        match self {
            Kodaira::I(2) | Kodaira::III => 1,
            Kodaira::I(3) | Kodaira::IV => 3,
            _ => 0,
        }
    }

    pub fn is_semistable(&self) -> bool {
        matches!(self, Kodaira::I(_))
    }

    pub fn is_reducible(&self) -> bool {
        self.line_components() > 0
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::Smooth => write!(f, "I0"),
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::I0Star => write!(f, "I0*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::Pathological(r) => write!(f, "pathological({r})"),
        }
    }
}

impl Serialize for Kodaira {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Fibre type after a cyclic base change of degree d ∈ {1, 2, 3}, ramified at the fibre.
pub fn base_change_type(k: &Kodaira, d: u32) -> Result<Kodaira> {
    use Kodaira::*;
    let out = match (k, d) {
        (_, 1) if matches!(k, Smooth | I(_) | II | III | IV) => k.clone(),
        (Smooth, _) => Smooth,
        (I(n), 2) => I(2 * n),
        (I(n), 3) => I(3 * n),
        (II, 2) => IV,
        (II, 3) => I0Star,
        (III, 2) => I0Star,
        (III, 3) => IIIStar,
        (IV, 2) => IVStar,
        (IV, 3) => Smooth,
        _ => {
            return Err(Error::Unsupported(format!(
                "base change of {k} by degree {d}"
            )))
        }
    };
    Ok(out)
}

/// Where the closure of the flex locus of the smooth fibres meets a singular fibre.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlexSupport {
    /// Smooth points, and on which components they lie.
    pub smooth_points: &'static str,
    /// Singular points in the support.
    pub singular_points: &'static str,
}

pub fn flex_support(k: &Kodaira) -> Result<FlexSupport> {
    let (smooth_points, singular_points) = match k {
        Kodaira::I(1) => ("3 smooth points", "the node"),
        Kodaira::I(2) => ("3 smooth points of the line component", "both nodes"),
        Kodaira::I(3) => ("3 smooth points on each component", "none"),
        Kodaira::II => ("1 smooth point", "the cusp"),
        Kodaira::III => ("1 smooth point of the line component", "the tacnode"),
        Kodaira::IV => ("1 smooth point on each component", "the triple point"),
        _ => return Err(Error::Unsupported(format!("no flex support entry for {k}"))),
    };
    Ok(FlexSupport {
        smooth_points,
        singular_points,
    })
}

/// Number of smooth flex-locus points a second-kind line can meet on each component, and
/// whether it may pass through a singular point: the structured form of [`flex_support`].
pub fn flex_support_counts(k: &Kodaira) -> Result<(Vec<usize>, bool)> {
    Ok(match k {
        Kodaira::I(1) => (vec![3], true),
        Kodaira::I(2) => (vec![3, 0], true),
        Kodaira::I(3) => (vec![3, 3, 3], false),
        Kodaira::II => (vec![1], true),
        Kodaira::III => (vec![1, 0], true),
        Kodaira::IV => (vec![1, 1, 1], true),
        _ => return Err(Error::Unsupported(format!("no flex support entry for {k}"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Kodaira::*;

    #[test]
    fn base_change_table() {
        let rows = [
            (I(1), [I(1), I(2), I(3)]),
            (I(2), [I(2), I(4), I(6)]),
            (II, [II, IV, I0Star]),
            (III, [III, I0Star, IIIStar]),
            (IV, [IV, IVStar, Smooth]),
        ];
        for (k, expect) in rows {
            for d in 1..=3 {
                assert_eq!(base_change_type(&k, d).unwrap(), expect[d as usize - 1]);
            }
        }
        assert!(base_change_type(&IVStar, 2).is_err());
        assert!(base_change_type(&I(1), 4).is_err());
    }

    #[test]
    fn euler_scales_under_cubic_base_change() {
        for n in 1..6 {
            let k = I(n);
            assert_eq!(base_change_type(&k, 3).unwrap().euler(), 3 * k.euler());
        }
    }

    #[test]
    fn flex_table() {
        assert_eq!(flex_support(&I(3)).unwrap().smooth_points, "3 smooth points on each component");
        assert_eq!(flex_support(&II).unwrap().singular_points, "the cusp");
        assert_eq!(flex_support(&IV).unwrap().singular_points, "the triple point");
        assert!(flex_support(&IVStar).is_err());
    }

    #[test]
    fn display_and_euler() {
        assert_eq!(I(3).to_string(), "I3");
        assert_eq!(IVStar.to_string(), "IV*");
        assert_eq!(IIIStar.euler(), 9);
        assert_eq!(I0Star.euler(), 6);
    }
}
