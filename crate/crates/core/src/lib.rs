pub mod algebra;
pub mod cli;
pub mod engine;
pub mod families;
pub mod oracle;
pub mod poset;
pub mod recurrence;
