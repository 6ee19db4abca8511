//! Virtually free groups G = F b₁ ∪ … ∪ F b_m: normal forms, word metric,
//! geodesic acceptors and the geodesic transducer.

mod geodesic;
mod geometry;
mod structure;
mod transducer;

use std::str::FromStr;

pub use geodesic::{geodesic_acceptor, validate_acceptor};
pub use geometry::{FellowReport, Geometry, Rational, DEFAULT_BUDGET};
pub use structure::{NormalForm, VfStructure};
pub use transducer::{
    apply_transducer, build_transducer, change_generators, geo_of_quasigeodesics, geo_of_rational,
    GeoTransducer,
};

use crate::error::{Error, Result};

/// Parameters of the geodesic constructions.
///
/// ```text
/// ftc = 1            # fellow-traveler constant K
/// cone_radius = 2
/// lambda = 1         # quasigeodesic parameters, rationals such as 3/2
/// epsilon = 0
/// budget = 1000000   # BFS node budget
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct VfConfig {
    pub ftc: usize,
    pub cone_radius: usize,
    pub lambda: Rational,
    pub epsilon: Rational,
    pub budget: usize,
}

impl Default for VfConfig {
    fn default() -> Self {
        VfConfig {
            ftc: 1,
            cone_radius: 2,
            lambda: Rational::from_integer(1),
            epsilon: Rational::from_integer(0),
            budget: DEFAULT_BUDGET,
        }
    }
}

impl VfConfig {
    pub fn parse(text: &str) -> Result<VfConfig> {
        let mut cfg = VfConfig::default();
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(line_no, "expected `key = value`"))?;
            let value = value.trim();
            let bad = |what: &str| Error::parse(line_no, format!("bad {what} {value:?}"));
            match key.trim() {
                "ftc" => cfg.ftc = value.parse().map_err(|_| bad("ftc"))?,
                "cone_radius" => cfg.cone_radius = value.parse().map_err(|_| bad("cone_radius"))?,
                "lambda" => cfg.lambda = Rational::from_str(value).map_err(|_| bad("lambda"))?,
                "epsilon" => cfg.epsilon = Rational::from_str(value).map_err(|_| bad("epsilon"))?,
                "budget" => cfg.budget = value.parse().map_err(|_| bad("budget"))?,
                other => return Err(Error::parse(line_no, format!("unknown key {other:?}"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cone_radius < 1 {
            return Err(Error::Malformed("cone_radius must be at least 1".into()));
        }
        if self.lambda < Rational::from_integer(1) {
            return Err(Error::Malformed("lambda must be at least 1".into()));
        }
        if self.epsilon < Rational::from_integer(0) {
            return Err(Error::Malformed("epsilon must be nonnegative".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn dinf() -> VfStructure {
        VfStructure::parse(include_str!("../../data/dinf.vf")).unwrap()
    }

    pub(crate) fn swap() -> VfStructure {
        VfStructure::parse(include_str!("../../data/swap.vf")).unwrap()
    }

    #[test]
    fn config_parsing() {
        let c = VfConfig::parse("ftc = 2\ncone_radius = 3\nlambda = 3/2\n").unwrap();
        assert_eq!(c.ftc, 2);
        assert_eq!(c.lambda, Rational::new(3, 2));
        assert!(VfConfig::parse("lambda = 1/2\n").is_err());
        assert!(VfConfig::parse("cone_radius = 0\n").is_err());
        assert!(VfConfig::parse("speed = 1\n").is_err());
    }
}
