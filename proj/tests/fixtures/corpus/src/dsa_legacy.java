package vault.signing;

import java.security.KeyPairGenerator;

class LegacySigner {
    KeyPairGenerator newGenerator() throws Exception {
        // DSA parameters inherited from the 2014 deployment
        return KeyPairGenerator.getInstance("DSA");
    }
}
