pub mod audit;
pub mod algebra_core;
pub mod multiquad;
pub mod elliptic;
pub mod matgroups;
pub mod frobenius;
pub mod division_fields;
pub mod families;
pub mod cli;
