//! Animat simulator driven by a two-node blackboard action selection
//! network.

pub mod blackboard;
pub mod cli;
pub mod ibenet;
pub mod motor;
pub mod perception;
pub mod physiology;
pub mod sim;
pub mod world;
