#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace pqcaudit {

// The fifteen quantum-vulnerable constructs the scanner knows about.
// Enumerator order is the canonical class order used for sorting.
enum class AlgorithmClass {
    Rsa,
    Ecdsa,
    Ecdh,
    Dsa,
    Dh,
    X25519,
    Ed25519,
    Pkcs1V15,
    Aes128,
    TripleDes,
    Rc4,
    Md5,
    Sha1,
    HardcodedKey,
    Rsa1024,
};

inline constexpr int kAlgorithmClassCount = 15;

// Which quantum attack applies.
enum class AttackPath {
    Shor,         // period finding: full break of the underlying problem
    Grover,       // quadratic search speedup: halves effective key strength
    KeyExposure,  // no quantum attack needed; the key is already in the repo
};

enum class BreakClass {
    Full,
    Weakened,
    CriticallyWeakened,
    AlreadyBroken,
    Exposure,
};

struct AlgorithmProfile {
    AlgorithmClass algorithm{};
    AttackPath path{};
    // Shor path only: logical-qubit demand for the standard key size.
    int qubit_estimate = 0;
    // Grover path only: effective security bits before/after halving.
    int classical_security_bits = 0;
    int quantum_security_bits = 0;
    std::string_view replacement;  // recommended NIST-aligned replacement
    BreakClass break_class{};
};

std::span<const AlgorithmClass> all_algorithm_classes();

std::string_view to_string(AlgorithmClass c);
std::string_view to_string(AttackPath p);
std::string_view to_string(BreakClass b);
std::optional<AlgorithmClass> algorithm_class_from_string(std::string_view name);

// Catalogue lookup; every class has exactly one profile.
const AlgorithmProfile& profile_for(AlgorithmClass c);

// Logical-qubit demand for a Shor-path class. Throws std::invalid_argument
// for classes that are not attacked via Shor.
int shor_qubit_estimate(AlgorithmClass c);

// Security bits removed by Grover halving (classical minus post-quantum).
// Throws std::invalid_argument for classes that are not attacked via Grover.
int grover_reduction_bits(AlgorithmClass c);

}  // namespace pqcaudit
