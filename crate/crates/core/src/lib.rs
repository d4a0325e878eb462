pub mod catalog;
pub mod charalg;
pub mod error;
pub mod hecke;
pub mod kostka;
pub mod lattice;
pub mod oracle;
pub mod poly;
pub mod rootdata;
pub mod verify;
pub mod weyl;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/root-data.md")]
    mod root_data {}
    #[doc = include_str!("../../../book/src/weyl.md")]
    mod weyl {}
    #[doc = include_str!("../../../book/src/invariant-ring.md")]
    mod invariant_ring {}
    #[doc = include_str!("../../../book/src/hecke.md")]
    mod hecke {}
    #[doc = include_str!("../../../book/src/kostka.md")]
    mod kostka {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
