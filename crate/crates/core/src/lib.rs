//! Cops and Robber on compact length spaces represented as metric graphs.
//!
//! The crate provides the length metric of a weighted 1-complex
//! ([`metric`]), constructions of game spaces from graphs ([`construct`]),
//! a step-by-step game engine ([`game`]), an exact solver for the classical
//! discrete game ([`discrete`]), robber and cop strategies ([`strategies`]),
//! file formats ([`format`]) and offline trace verification ([`verify`]).

pub mod construct;
pub mod discrete;
pub mod format;
pub mod game;
pub mod metric;
pub mod rng;
pub mod strategies;
pub mod verify;
