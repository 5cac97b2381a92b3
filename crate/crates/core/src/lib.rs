//! Election control on a social network.
//!
//! The library models a multi-winner election held over a directed social
//! graph: influence spreads by the independent cascade model, activated
//! voters shift the target party's candidates in their preference lists,
//! and a campaign picks seed nodes to move one of several control
//! objectives (margin of victory, difference of winners, and their
//! straight-party-voting relaxations).
//!
//! The crate is `no_std` + `alloc`; file formats, JSON reports, and the
//! command-line driver live in the companion `votecast` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod diffusion;
pub mod election;
pub mod exact;
pub mod graph;
pub mod instances;
pub mod objectives;
pub mod optimizer;
pub mod oracle;
pub mod rng;

pub use exact::{Prob, Ratio};
pub use graph::Graph;
