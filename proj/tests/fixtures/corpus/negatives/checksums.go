package integrity

import "crypto/sha256"

// ArtifactDigest hashes release payloads with a modern digest.
func ArtifactDigest(payload []byte) [32]byte {
	return sha256.Sum256(payload)
}
