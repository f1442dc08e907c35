//! Session agreement for the relay mesh.

use x25519_dalek::{EphemeralSecret, PublicKey};

pub fn agree(peer: &PublicKey) -> SharedSecret {
    // curve25519 scalar multiplication under the hood
    let ours = EphemeralSecret::random();
    ours.agree_with(peer)
}
