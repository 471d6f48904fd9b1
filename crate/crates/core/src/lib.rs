//! Finite p-groups given by power-commutator presentations, a verified
//! construction of non-inner automorphisms of order `p` that fix the
//! Frattini subgroup, and a brute-force automorphism counter to check it.
//!
//! Start with [`corpus`] or [`format`] to get a [`pc::PcGroup`], then see
//! [`hypothesis::check_theorem_hypotheses`] and
//! [`automorphism::construct_theorem_witness`].

pub mod automorphism;
pub mod cli;
pub mod corpus;
pub mod example;
pub mod format;
pub mod hypothesis;
pub mod oracle;
pub mod pc;
pub mod report;
pub mod structure;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    mod presentations {}
    #[doc = include_str!("../../../book/src/subgroups.md")]
    mod subgroups {}
    #[doc = include_str!("../../../book/src/hypotheses.md")]
    mod hypotheses {}
    #[doc = include_str!("../../../book/src/automorphisms.md")]
    mod automorphisms {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/example-group.md")]
    mod example_group {}
}
