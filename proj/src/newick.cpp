#include "cuisines/newick.hpp"

namespace cuisines {

namespace {

// Newick quoted label: single quotes, embedded quotes doubled.
std::string quote_label(const std::string& label) {
    std::string out = "'";
    for (char c : label) {
        if (c == '\'') out += "''";
        else out.push_back(c);
    }
    out.push_back('\'');
    return out;
}

void render_node(const Dendrogram& tree, std::int32_t node, double parent_height,
                 std::string& out) {
    const auto n = static_cast<std::int32_t>(tree.leaves.size());
    double height = 0.0;
    if (node < n) {
        out += quote_label(tree.leaves[static_cast<std::size_t>(node)]);
    } else {
        const MergeStep& merge = tree.merges[static_cast<std::size_t>(node - n)];
        height = merge.height;
        out.push_back('(');
        render_node(tree, merge.left, merge.height, out);
        out.push_back(',');
        render_node(tree, merge.right, merge.height, out);
        out.push_back(')');
    }
    out.push_back(':');
    out += format_fixed(parent_height - height);
}

}  // namespace

std::string to_newick(const Dendrogram& tree) {
    if (tree.leaves.empty()) throw InputError("cannot render an empty dendrogram");
    std::string out;
    if (tree.merges.empty()) {
        out = quote_label(tree.leaves[0]);
    } else {
        const MergeStep& root = tree.merges.back();
        out.push_back('(');
        render_node(tree, root.left, root.height, out);
        out.push_back(',');
        render_node(tree, root.right, root.height, out);
        out.push_back(')');
    }
    out += ";\n";
    return out;
}

}  // namespace cuisines
