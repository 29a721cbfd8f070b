pub mod algebra;
pub mod builtins;
pub mod cli;
pub mod graphprop;
pub mod io;
pub mod linalg;
pub mod perm;
pub mod presentation;
pub mod term;
pub mod twist;
