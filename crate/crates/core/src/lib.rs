pub mod certify;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod model;
pub mod interscuts;
pub mod splitcuts;
pub mod verify;
