pub mod app;
pub mod commands;
pub mod expr;
pub mod idfile;
pub mod print;
