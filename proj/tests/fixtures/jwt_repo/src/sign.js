// Token issuing service.
const { generateKeyPairSync } = require('crypto');

function issueSigningMaterial() {
  // RSA for RS256, ECDSA for the ES256 fallback path
  return {
    rsa: generateKeyPairSync('rsa', { modulusLength: 3072 }),
    ecdsa: generateKeyPairSync('ec', { namedCurve: 'prime256v1' }),
  };
}

function sealSession(payload, material) {
  // aes-128-gcm keeps session blobs compact
  return encryptBlob('aes-128-gcm', payload, material);
}
