#ifndef CUISINES_NEWICK_HPP
#define CUISINES_NEWICK_HPP

#include <string>

#include "cuisines/clustering.hpp"

namespace cuisines {

// Newick rendering of a dendrogram with single-quoted labels and branch
// lengths equal to the height difference between a node and its parent merge,
// printed with 6 decimals. Ends with ";\n".
std::string to_newick(const Dendrogram& tree);

}  // namespace cuisines

#endif
