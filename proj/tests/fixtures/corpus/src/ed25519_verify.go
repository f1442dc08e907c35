package attest

import "crypto/ed25519"

// VerifyManifest checks a release signature against the embedded publisher id.
func VerifyManifest(pub ed25519.PublicKey, manifest, sig []byte) bool {
	return ed25519.Verify(pub, manifest, sig)
}
