pub mod constants;
pub mod dynamic_charge;
pub mod error;
pub mod gravity;
pub mod hydrogen;
pub mod poisson;
pub mod quadrature;
pub mod quantity;
pub mod report;
pub mod unit_systems;
