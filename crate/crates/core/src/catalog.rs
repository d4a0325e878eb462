//! Built-in root data, embedded at compile time in the datum file format.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, RootDatumSpec};

const CATALOG_TOML: &str = include_str!("catalog.toml");

#[derive(Deserialize)]
struct CatalogFile {
    datum: Vec<RootDatumSpec>,
}

/// Every built-in datum, validated, in file order.
pub fn catalog() -> Vec<RootDatum> {
    static CACHE: OnceLock<Vec<RootDatum>> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            let file: CatalogFile = toml::from_str(CATALOG_TOML).expect("embedded catalog parses");
            file.datum
                .into_iter()
                .map(|s| RootDatum::validate(s).expect("embedded catalog entries are valid"))
                .collect()
        })
        .clone()
}

/// Names of the built-in data, in file order.
pub fn names() -> Vec<String> {
    catalog().iter().map(|d| d.name().to_string()).collect()
}

/// Case-insensitive lookup by name.
pub fn lookup(name: &str) -> Result<RootDatum> {
    catalog()
        .into_iter()
        .find(|d| d.name().eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Weight;

    #[test]
    fn lists_required_entries() {
        let n = names();
        for want in [
            "GL1", "GL2", "GL3", "GL4", "SL2", "SL3", "PGL2", "PGL3", "Sp4", "G2", "U2", "U3",
            "U4", "GL2xGL2",
        ] {
            assert!(n.iter().any(|x| x == want), "{want} missing");
        }
    }

    #[test]
    fn pgl2_has_dual_group_sl2() {
        let d = lookup("pgl2").unwrap();
        assert_eq!(d.rank(), 1);
        assert_eq!(d.simple_roots(), &[Weight(vec![2])]);
    }

    #[test]
    fn unknown_name() {
        assert_eq!(lookup("E8").unwrap_err().kind(), "UnknownName");
    }

    #[test]
    fn rho_ad_is_one_on_simple_roots() {
        for d in catalog() {
            let rho = d.rho_ad();
            for a in d.simple_roots() {
                assert_eq!(rho.pair_integral(a).unwrap(), 1, "{}", d.name());
            }
        }
    }

    #[test]
    fn positive_roots_closed_under_sigma() {
        for d in catalog() {
            for a in d.positive_roots() {
                assert!(
                    d.positive_roots().contains(&d.apply_sigma(a)),
                    "{}",
                    d.name()
                );
            }
        }
    }
}
