//! Character tables of small finite groups, their p-blocks and fields of values, and
//! mechanical checks of statements relating principal blocks, rationality and normal
//! p-complements.

pub mod arith;
pub mod blocks;
pub mod cyclo;
pub mod groups;
pub mod partitions;
pub mod rationality;
pub mod tables;
pub mod verify;

#[cfg(test)]
mod testutil;

