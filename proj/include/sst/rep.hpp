#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sst/group.hpp"

namespace sst {

/// One real irreducible representation: dimension, fixed-point dimensions per
/// subgroup class, and multiplicity in the regular representation.
struct Irreducible {
    std::string id;
    Int dim = 1;
    std::map<std::string, Int> fixed_dim; // subgroup-class id -> dim of fixed subspace
    Int mult_in_regular = 1;
};

/// Table of all real irreducibles of a group, plus optional aliases that let
/// callers write familiar names (e.g. the rotation representations indexed the
/// other way around) as sparse combinations of table entries.
class IrreducibleTable {
public:
    using Alias = std::map<std::string, Int>; // irreducible id -> multiplicity

    IrreducibleTable(GroupPtr group, std::vector<Irreducible> irreducibles,
                     std::map<std::string, Alias> aliases = {});

    const GroupPtr& group() const { return group_; }
    const std::vector<Irreducible>& irreducibles() const { return irreducibles_; }
    const std::map<std::string, Alias>& aliases() const { return aliases_; }

    bool has_irreducible(const std::string& id) const;
    const Irreducible& irreducible_by_id(const std::string& id) const;

private:
    GroupPtr group_;
    std::vector<Irreducible> irreducibles_;
    std::map<std::string, Alias> aliases_;
};

using TablePtr = std::shared_ptr<const IrreducibleTable>;

Diagnostics validate_table(const IrreducibleTable& t);

/// Element of RO(G): finitely supported integer multiplicities over a table.
/// Negative multiplicities (virtual representations) are allowed everywhere.
class VirtualRep {
public:
    explicit VirtualRep(TablePtr table) : table_(std::move(table)) {}
    VirtualRep(TablePtr table, std::map<std::string, Int> mult);

    static VirtualRep zero(TablePtr table) { return VirtualRep(std::move(table)); }
    static VirtualRep single(TablePtr table, const std::string& irr_id, Int mult = 1);

    const TablePtr& table() const { return table_; }
    const std::map<std::string, Int>& mult() const { return mult_; }
    Int mult_of(const std::string& irr_id) const;
    bool is_zero() const { return mult_.empty(); }

    VirtualRep operator+(const VirtualRep& rhs) const;
    VirtualRep operator-(const VirtualRep& rhs) const;
    VirtualRep operator*(Int k) const;
    bool operator==(const VirtualRep& rhs) const;

private:
    TablePtr table_;
    std::map<std::string, Int> mult_; // zero entries pruned
};

/// |V| = sum of mult * dim.
Int total_dim(const VirtualRep& v);

/// |V^H|, extended linearly to virtual representations (can be negative).
Int fixed_dim(const VirtualRep& v, const SubgroupClass& h);
Int fixed_dim(const VirtualRep& v, const std::string& class_id);

/// The regular representation of the table's group.
VirtualRep regular_rep(const TablePtr& table);

/// Smallest k >= 0 such that k * rho_G + V is an actual representation.
Int rho_padding(const VirtualRep& v);

/// Real irreducible table of C_{p^n}: trivial rep; the sign rep when p = 2;
/// and the two-dimensional rotation representations lambda(m).  Aliases
/// lambda0..lambda{n-1} point at rotation by 2*pi / p^(i+1).
TablePtr builtin_cyclic_table(Int p, Int n);

/// Real irreducible table of Q_8: trivial, the three sign characters with
/// kernels <i>, <j>, <k>, and the four-dimensional quaternionic irreducible.
TablePtr builtin_quaternion8_table();

/// Resolve a built-in table by group name (C2, C4, C8, C3, C9, Q8).
TablePtr builtin_table(const std::string& group_name);

/// Parse a sparse multiplicity expression such as "sigma:1,lambda1:-2".
/// "0" or the empty string denote the zero element.  Aliases resolve to their
/// expansions; unknown ids throw.
VirtualRep parse_virtual_rep(const TablePtr& table, const std::string& expr);

/// Inverse of parse_virtual_rep (canonical ids only).
std::string format_virtual_rep(const VirtualRep& v);

} // namespace sst
