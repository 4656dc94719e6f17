pub mod affine;
pub mod cli;
pub mod combinat;
pub mod electroid;
pub mod error;
pub mod grassmann;
pub mod io;
pub mod map;
pub mod medial;
pub mod network;
pub mod rat;
pub mod realize;
pub mod temperley;
pub mod verify;
