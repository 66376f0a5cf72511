//! Exact verification of free, translation-free dihedral group actions on
//! abelian varieties of the form `(E^{2n} x E') / <w>`.
//!
//! * [`linalg`]: Hermite normal form, rational nullspaces, subgroup membership.
//! * [`torus`]: lattice-coordinate model of the tori and their affine automorphisms.
//! * [`action`]: orders, translations, fixed points, closure, conjugacy.
//! * [`construction`]: the order-`8n` dihedral action and its subgroups.
//! * [`word`]: group words in `r` and `s`.
//! * [`certificate`]: JSON documents emitted by the command-line tool.
//! * [`cli`]: the `dihedral-free` command.

pub mod action;
pub mod certificate;
pub mod cli;
pub mod construction;
pub mod error;
pub mod linalg;
pub mod torus;
pub mod word;

pub use error::{Error, Result};
