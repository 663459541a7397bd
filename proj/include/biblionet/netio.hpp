#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "biblionet/network.hpp"

namespace biblionet {

enum class NetFormat { edge_tsv, pajek, gml };

std::optional<NetFormat> net_format_from_string(std::string_view name);
std::string_view to_string(NetFormat format);

/// Picks a format from a file extension (.tsv, .net, .gml); edge-tsv otherwise.
NetFormat net_format_for_path(std::string_view path);

/// Up to 6 significant digits; integral weights print without a decimal point.
std::string format_weight(double w);

/// Byte-deterministic writers: nodes in id order, edges in (i, j) order.
void write_network(const Network& net, NetFormat format, std::ostream& out);

/// Inverse of write_network on its own output. edge-tsv auto-registers
/// labels in first-seen order (it carries no isolated nodes).
Network read_network(std::istream& in, NetFormat format);

}  // namespace biblionet
