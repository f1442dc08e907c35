"""Known-answer vectors for the signing shim."""

from ecdsa import SigningKey, NIST256p


def test_known_vector():
    signer = SigningKey.generate(curve=NIST256p)
    assert signer.sign(b"payload")
