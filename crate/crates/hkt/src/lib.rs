//! File format, report rendering and the verification suite on top of
//! [`hkt_core`]. The `hkt` binary is a thin layer over these modules.

pub mod format;
pub mod render;
pub mod verify;
