pub mod cli;
pub mod ergodic;
pub mod family;
pub mod pet;
pub mod polyalg;
