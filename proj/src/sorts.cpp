#include "intent/sorts.hpp"

#include "intent/errors.hpp"

namespace intent {

void SortTree::add_sort(const std::string &name) {
    if (parent_.count(name)) throw DomainError("duplicate sort '" + name + "'");
    parent_[name] = "";
}

void SortTree::add_subsort(const std::string &child, const std::string &parent) {
    if (!parent_.count(child)) throw DomainError("unknown sort '" + child + "' in subsort");
    if (!parent_.count(parent)) throw DomainError("unknown sort '" + parent + "' in subsort");
    if (!parent_[child].empty())
        throw DomainError("sort '" + child + "' already has parent '" + parent_[child] + "'");
    // Reject cycles: walking up from `parent` must not reach `child`.
    for (std::string p = parent; !p.empty(); p = parent_.at(p))
        if (p == child) throw DomainError("subsort cycle through '" + child + "'");
    parent_[child] = parent;
}

void SortTree::add_instance(const std::string &name, const std::string &sort) {
    if (!parent_.count(sort))
        throw DomainError("instance '" + name + "' declared under missing sort '" + sort + "'");
    if (instance_sort_.count(name))
        throw DomainError("duplicate instance name '" + name + "'");
    instance_sort_[name] = sort;
    instance_order_.push_back(name);
}

const std::string &SortTree::instance_sort(const std::string &name) const {
    auto it = instance_sort_.find(name);
    if (it == instance_sort_.end()) throw DomainError("unknown instance '" + name + "'");
    return it->second;
}

bool SortTree::is_subsort(const std::string &sub, const std::string &super) const {
    if (!parent_.count(sub) || !parent_.count(super)) return false;
    for (std::string s = sub; !s.empty(); s = parent_.at(s))
        if (s == super) return true;
    return false;
}

bool SortTree::instance_of(const std::string &inst, const std::string &sort) const {
    auto it = instance_sort_.find(inst);
    return it != instance_sort_.end() && is_subsort(it->second, sort);
}

std::vector<std::string> SortTree::instances_of(const std::string &sort) const {
    std::vector<std::string> out;
    for (const std::string &name : instance_order_)
        if (is_subsort(instance_sort_.at(name), sort)) out.push_back(name);
    return out;
}

std::string SortTree::meet(const std::string &a, const std::string &b) const {
    if (is_subsort(a, b)) return a;
    if (is_subsort(b, a)) return b;
    return "";
}

} // namespace intent
