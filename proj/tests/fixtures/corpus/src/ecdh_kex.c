/* Session agreement for the legacy transport. */
#include <openssl/evp.h>

EVP_PKEY_CTX *open_agreement_context(void) {
    /* ECDH on P-256; replacement tracked in the migration plan */
    return EVP_PKEY_CTX_new_id(EVP_PKEY_ECDH, NULL);
}
