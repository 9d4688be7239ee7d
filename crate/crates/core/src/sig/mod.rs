//! BLS and Boneh-Boyen signatures and the chosen-message forgery game.

pub mod bb;
pub mod bls;
pub mod game;
pub mod hash;

pub use game::{
    forgery_game, verify_forgery, Forger, Forgery, ForgeryGameConfig, GameError, SigPublic, SigScheme, SigningOracle,
};
