#include "pqcaudit/threat_knowledge.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace pqcaudit {

namespace {

// Qubit figures follow the usual resource estimates: factoring an n-bit RSA
// modulus needs roughly 2n logical qubits; 256-bit curve discrete logs sit
// near 2330. Grover rows carry nominal classical strength and its halving.
constexpr std::array<AlgorithmProfile, kAlgorithmClassCount> kProfiles{{
    {AlgorithmClass::Rsa, AttackPath::Shor, 4096, 0, 0,
     "ML-KEM (FIPS 203) / ML-DSA (FIPS 204)", BreakClass::Full},
    {AlgorithmClass::Ecdsa, AttackPath::Shor, 2330, 0, 0,
     "ML-DSA (FIPS 204)", BreakClass::Full},
    {AlgorithmClass::Ecdh, AttackPath::Shor, 2330, 0, 0,
     "ML-KEM (FIPS 203)", BreakClass::Full},
    {AlgorithmClass::Dsa, AttackPath::Shor, 4096, 0, 0,
     "ML-DSA (FIPS 204)", BreakClass::Full},
    {AlgorithmClass::Dh, AttackPath::Shor, 4096, 0, 0,
     "ML-KEM (FIPS 203)", BreakClass::Full},
    {AlgorithmClass::X25519, AttackPath::Shor, 2330, 0, 0,
     "ML-KEM (FIPS 203)", BreakClass::Full},
    {AlgorithmClass::Ed25519, AttackPath::Shor, 2330, 0, 0,
     "ML-DSA (FIPS 204)", BreakClass::Full},
    {AlgorithmClass::Pkcs1V15, AttackPath::Shor, 4096, 0, 0,
     "OAEP / ML-KEM (FIPS 203)", BreakClass::Full},
    {AlgorithmClass::Aes128, AttackPath::Grover, 0, 128, 64,
     "AES-256", BreakClass::Weakened},
    {AlgorithmClass::TripleDes, AttackPath::Grover, 0, 112, 56,
     "AES-256", BreakClass::CriticallyWeakened},
    {AlgorithmClass::Rc4, AttackPath::Grover, 0, 128, 64,
     "AES-256-GCM", BreakClass::AlreadyBroken},
    {AlgorithmClass::Md5, AttackPath::Grover, 0, 128, 64,
     "SHA-3 / SHA-256", BreakClass::Weakened},
    {AlgorithmClass::Sha1, AttackPath::Grover, 0, 160, 80,
     "SHA-256 / SHA-3", BreakClass::Weakened},
    {AlgorithmClass::HardcodedKey, AttackPath::KeyExposure, 0, 0, 0,
     "Key mgmt. system", BreakClass::Exposure},
    {AlgorithmClass::Rsa1024, AttackPath::Shor, 2048, 0, 0,
     "ML-KEM / ML-DSA", BreakClass::Full},
}};

constexpr std::array<AlgorithmClass, kAlgorithmClassCount> kAllClasses{
    AlgorithmClass::Rsa,          AlgorithmClass::Ecdsa,
    AlgorithmClass::Ecdh,         AlgorithmClass::Dsa,
    AlgorithmClass::Dh,           AlgorithmClass::X25519,
    AlgorithmClass::Ed25519,      AlgorithmClass::Pkcs1V15,
    AlgorithmClass::Aes128,       AlgorithmClass::TripleDes,
    AlgorithmClass::Rc4,          AlgorithmClass::Md5,
    AlgorithmClass::Sha1,         AlgorithmClass::HardcodedKey,
    AlgorithmClass::Rsa1024,
};

constexpr std::array<std::string_view, kAlgorithmClassCount> kClassNames{
    "RSA",   "ECDSA",   "ECDH", "DSA", "DH",   "X25519",        "ED25519", "PKCS1V15",
    "AES128", "TRIPLE_DES", "RC4",  "MD5", "SHA1", "HARDCODED_KEY", "RSA1024",
};

}  // namespace

std::span<const AlgorithmClass> all_algorithm_classes() { return kAllClasses; }

std::string_view to_string(AlgorithmClass c) {
    return kClassNames.at(static_cast<std::size_t>(c));
}

std::string_view to_string(AttackPath p) {
    switch (p) {
        case AttackPath::Shor: return "SHOR";
        case AttackPath::Grover: return "GROVER";
        case AttackPath::KeyExposure: return "KEY_EXPOSURE";
    }
    return "UNKNOWN";
}

std::string_view to_string(BreakClass b) {
    switch (b) {
        case BreakClass::Full: return "FULL";
        case BreakClass::Weakened: return "WEAKENED";
        case BreakClass::CriticallyWeakened: return "CRITICALLY_WEAKENED";
        case BreakClass::AlreadyBroken: return "ALREADY_BROKEN";
        case BreakClass::Exposure: return "EXPOSURE";
    }
    return "UNKNOWN";
}

std::optional<AlgorithmClass> algorithm_class_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kClassNames.size(); ++i) {
        if (kClassNames[i] == name) return kAllClasses[i];
    }
    return std::nullopt;
}

const AlgorithmProfile& profile_for(AlgorithmClass c) {
    return kProfiles.at(static_cast<std::size_t>(c));
}

int shor_qubit_estimate(AlgorithmClass c) {
    const AlgorithmProfile& profile = profile_for(c);
    if (profile.path != AttackPath::Shor) {
        throw std::invalid_argument("shor_qubit_estimate: " +
                                    std::string(to_string(c)) +
                                    " is not attacked via Shor");
    }
    return profile.qubit_estimate;
}

int grover_reduction_bits(AlgorithmClass c) {
    const AlgorithmProfile& profile = profile_for(c);
    if (profile.path != AttackPath::Grover) {
        throw std::invalid_argument("grover_reduction_bits: " +
                                    std::string(to_string(c)) +
                                    " is not attacked via Grover");
    }
    return profile.classical_security_bits - profile.quantum_security_bits;
}

}  // namespace pqcaudit
