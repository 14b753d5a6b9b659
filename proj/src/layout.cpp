#include "qwave/layout.hpp"

#include <stdexcept>
#include <unordered_set>

namespace qwave {

RegisterLayout::RegisterLayout(std::vector<Register> registers) : regs_(std::move(registers)) {
    if (regs_.empty()) {
        throw std::invalid_argument("layout needs at least one register");
    }
    std::unordered_set<std::string> seen;
    for (const Register& r : regs_) {
        if (r.qubits < 1) {
            throw std::invalid_argument("register '" + r.name + "' must have at least one qubit");
        }
        if (!seen.insert(r.name).second) {
            throw std::invalid_argument("duplicate register name '" + r.name + "'");
        }
        offsets_.push_back(total_);
        total_ += r.qubits;
    }
    if (total_ > max_total_qubits) {
        throw std::invalid_argument("layout has " + std::to_string(total_) +
                                    " qubits; desk-scale cap is " +
                                    std::to_string(max_total_qubits));
    }
}

int RegisterLayout::find(const std::string& name) const {
    for (std::size_t i = 0; i < regs_.size(); ++i) {
        if (regs_[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

bool RegisterLayout::has_register(const std::string& name) const { return find(name) >= 0; }

const Register& RegisterLayout::reg(const std::string& name) const {
    int i = find(name);
    if (i < 0) throw std::invalid_argument("unknown register '" + name + "'");
    return regs_[i];
}

int RegisterLayout::offset(const std::string& name) const {
    int i = find(name);
    if (i < 0) throw std::invalid_argument("unknown register '" + name + "'");
    return offsets_[i];
}

int RegisterLayout::width(const std::string& name) const { return reg(name).qubits; }

std::uint64_t RegisterLayout::register_dim(const std::string& name) const {
    return std::uint64_t{1} << reg(name).qubits;
}

std::uint64_t RegisterLayout::extract(const std::string& name, std::uint64_t global) const {
    int i = find(name);
    if (i < 0) throw std::invalid_argument("unknown register '" + name + "'");
    std::uint64_t mask = (std::uint64_t{1} << regs_[i].qubits) - 1;
    return (global >> offsets_[i]) & mask;
}

std::uint64_t RegisterLayout::replace(const std::string& name, std::uint64_t global,
                                      std::uint64_t value) const {
    int i = find(name);
    if (i < 0) throw std::invalid_argument("unknown register '" + name + "'");
    std::uint64_t mask = ((std::uint64_t{1} << regs_[i].qubits) - 1) << offsets_[i];
    return (global & ~mask) | ((value << offsets_[i]) & mask);
}

bool RegisterLayout::operator==(const RegisterLayout& other) const {
    if (regs_.size() != other.regs_.size()) return false;
    for (std::size_t i = 0; i < regs_.size(); ++i) {
        if (regs_[i].name != other.regs_[i].name || regs_[i].qubits != other.regs_[i].qubits) {
            return false;
        }
    }
    return true;
}

}  // namespace qwave
