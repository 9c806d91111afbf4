//! Solvers for the orienteering interdiction game.
//!
//! Two players compete on a complete graph with node prizes and edge
//! lengths. The follower wants a depot-anchored tour of length at most a
//! distance budget that collects as much prize as possible; the leader
//! first interdicts a limited number of nodes so that their prizes become
//! worthless to the follower. The leader minimizes the follower's best
//! achievable prize.
//!
//! The crate provides:
//!
//! * [`instance`] — TSPLIB ingestion and instance construction,
//! * [`lp`] — a bounded-variable simplex engine with dynamic rows,
//! * [`tour`] and [`graph`] — tour primitives and graph algorithms,
//! * [`follower`] — an exact branch-and-cut solver for the follower's
//!   orienteering problem under a fixed interdiction,
//! * [`leader`] — the exact interdiction-cut branch-and-cut solver,
//! * [`ga`] — a genetic algorithm producing high-quality solutions fast,
//! * [`oracle`] — brute-force ground truth for small instances,
//! * [`report`] — run records and CSV emission for the `oig` binary.
//!
//! The companion guide under `book/` walks through the theory and the
//! library API chapter by chapter; its code snippets are compiled and run
//! as doc-tests via [`guide`].

pub mod data;
pub mod ga;
pub mod graph;
pub mod instance;
pub mod leader;
pub mod lp;
pub mod oracle;
pub mod report;
pub mod tour;

pub mod follower;

mod guide;

pub use instance::{Instance, PrizeScheme, RawTsp};

