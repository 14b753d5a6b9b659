#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qwave {

enum class RegisterRole { system, ancilla, pointer, bath };

struct Register {
    std::string name;
    int qubits = 0;
    RegisterRole role = RegisterRole::system;
};

/// Partition of the machine's qubits into named registers.
///
/// Bit order is fixed repo-wide: within a register, qubit 0 is the least
/// significant bit of that register's value, and registers concatenate with
/// the first-listed register occupying the least significant bits of the
/// global basis index.
class RegisterLayout {
  public:
    // 2^26 complex doubles ~ 1 GiB; larger machines are out of scope.
    static constexpr int max_total_qubits = 26;

    RegisterLayout() = default;
    explicit RegisterLayout(std::vector<Register> registers);

    int total_qubits() const { return total_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << total_; }
    const std::vector<Register>& registers() const { return regs_; }

    bool has_register(const std::string& name) const;
    const Register& reg(const std::string& name) const;
    /// Global index of the register's qubit 0.
    int offset(const std::string& name) const;
    int width(const std::string& name) const;
    std::uint64_t register_dim(const std::string& name) const;

    /// Value held by register `name` inside a global basis index.
    std::uint64_t extract(const std::string& name, std::uint64_t global) const;
    /// Global index with register `name` replaced by `value`.
    std::uint64_t replace(const std::string& name, std::uint64_t global,
                          std::uint64_t value) const;

    bool operator==(const RegisterLayout& other) const;

  private:
    int find(const std::string& name) const;  // -1 if absent

    std::vector<Register> regs_;
    std::vector<int> offsets_;
    int total_ = 0;
};

}  // namespace qwave
