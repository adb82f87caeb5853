#pragma once

#include <map>
#include <string>
#include <vector>

namespace intent {

// Tree of sort names with subsort edges plus declared instances.
// Instances may be declared at any sort, not just leaves.
class SortTree {
public:
    void add_sort(const std::string &name);
    void add_subsort(const std::string &child, const std::string &parent);
    void add_instance(const std::string &name, const std::string &sort);

    bool has_sort(const std::string &name) const { return parent_.count(name) != 0; }
    bool has_instance(const std::string &name) const { return instance_sort_.count(name) != 0; }
    const std::string &instance_sort(const std::string &name) const;

    // True when `sub` equals `super` or is reachable via subsort edges.
    bool is_subsort(const std::string &sub, const std::string &super) const;
    bool instance_of(const std::string &inst, const std::string &sort) const;

    // All instances of `sort` (transitively), in declaration order.
    std::vector<std::string> instances_of(const std::string &sort) const;

    const std::vector<std::string> &instance_names() const { return instance_order_; }

    // Most specific of the two sorts if comparable; empty string otherwise.
    std::string meet(const std::string &a, const std::string &b) const;

private:
    std::map<std::string, std::string> parent_; // sort -> parent ("" for roots)
    std::map<std::string, std::string> instance_sort_;
    std::vector<std::string> instance_order_;
};

} // namespace intent
