pub mod bmw;
pub mod cellmod;
pub mod classify;
pub mod coeff;
pub mod combin;
pub mod hecke;
pub mod linalg;
pub mod oracle;
pub mod verify;
