#include "quasirank/album.hpp"

#include <sstream>

#include "quasirank/errors.hpp"
#include "quasirank/rng.hpp"

namespace quasirank {

AlbumGraph generate_album_graph(const AlbumGraphSpec& spec) {
    if (spec.n_albums < 1 || spec.pages_per_album < 1 || spec.hub_count < 1)
        throw ValidationError("album graph needs at least one hub, album and page");
    if (spec.hub_link_density < 0.0 || spec.hub_link_density > 1.0)
        throw ValidationError("hub link density must lie in [0, 1]");

    AlbumGraph g;
    std::ostringstream edges;
    CounterRng rng(spec.seed);
    auto name = [](const char* prefix, std::size_t k) {
        return std::string(prefix) + std::to_string(k);
    };

    for (std::size_t h = 0; h < spec.hub_count; ++h) g.hubs.push_back(name("hub", h));
    // ring keeps the core strongly connected
    for (std::size_t h = 0; h + 1 < spec.hub_count; ++h)
        edges << g.hubs[h] << '\t' << g.hubs[h + 1] << '\n';
    if (spec.hub_count > 1)
        edges << g.hubs[spec.hub_count - 1] << '\t' << g.hubs[0] << '\n';
    // density links point from later hubs to earlier ones, giving the core
    // a stable prestige gradient
    for (std::size_t i = 1; i < spec.hub_count; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (rng.next_double() < spec.hub_link_density)
                edges << g.hubs[i] << '\t' << g.hubs[j] << '\n';
        }
    }

    // every album hangs off hub0, the site portal; albums are therefore
    // exact structural copies of each other and their pages carry equal
    // scores under any measure
    for (std::size_t a = 0; a < spec.n_albums; ++a) {
        const std::string index = "a" + std::to_string(a) + "_index";
        g.indexes.push_back(index);
        edges << g.hubs[0] << '\t' << index << '\n';
        edges << index << '\t' << g.hubs[0] << '\n';
        for (std::size_t p = 0; p < spec.pages_per_album; ++p) {
            const std::string page = "a" + std::to_string(a) + "_p" + std::to_string(p);
            g.interiors.push_back(page);
            edges << index << '\t' << page << '\n';
            edges << page << '\t' << index << '\n';
        }
    }

    for (std::size_t l = 0; l < spec.dangling_leaves; ++l) {
        const std::string leaf = name("leaf", l);
        g.leaves.push_back(leaf);
        edges << g.hubs[l % spec.hub_count] << '\t' << leaf << '\n';
    }

    // exit cycle the walk cannot return from, entered through the portal;
    // the dangling leaves carry the remaining leakage via their artificial
    // uniform rows
    if (spec.exit_cycle > 0) {
        for (std::size_t e = 0; e < spec.exit_cycle; ++e) g.exits.push_back(name("out", e));
        for (std::size_t e = 0; e < spec.exit_cycle; ++e)
            edges << g.exits[e] << '\t' << g.exits[(e + 1) % spec.exit_cycle] << '\n';
        edges << g.hubs[0] << '\t' << g.exits[0] << '\n';
    }

    g.edges = parse_edge_list(edges.str());
    return g;
}

} // namespace quasirank
