//! Travel planning in evolving graphs where agents may also jump back in time
//! at a price.
//!
//! Two planners are provided: [`cost_constrained`] finds the earliest arrival
//! whose total backward cost fits a budget, [`history_constrained`] the
//! earliest arrival whose jumps never fall more than `H` instants below the
//! latest time already reached. Both break delay ties by cost, and both are
//! checked against the brute-force [`oracle`].

pub mod cli;
pub mod closure;
pub mod cost;
pub mod cost_constrained;
pub mod graph;
pub mod history_constrained;
pub mod oracle;
pub mod render;
pub mod suite;
pub mod travel;

pub use closure::ClosureTables;
pub use cost::{Budget, Cost, CostFunction, TableTail};
pub use cost_constrained::{
    plan_any, plan_cost_constrained, plan_odoc, CcQuery, PlanError, PlanResult,
};
pub use graph::{strictify, EvolvingGraph, Node, TemporalGraph, Time};
pub use history_constrained::plan_history_constrained;
pub use travel::{Step, Travel};
