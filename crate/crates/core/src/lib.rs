pub mod cli;
pub mod complexity;
pub mod generators;
pub mod rauzy;
pub mod realnum;
pub mod verify;
pub mod wordcore;
