#ifndef sbk_debruijn_hpp
#define sbk_debruijn_hpp

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sbk/graph.hpp"

namespace sbk {

using ReadSet = std::vector<std::string>;

// Loads FASTA or FASTQ (sniffed from the first record marker), uppercasing
// sequences. FASTA sequences may wrap over multiple lines; FASTQ records are
// the usual four lines. An empty file yields an empty read set.
ReadSet read_sequences(std::istream& in);
ReadSet read_sequences_file(const std::string& path);

std::string reverse_complement(const std::string& seq);

/*
 * Multiset of k-mers. Keys are 2-bit packed into a word for k <= 32 and
 * kept as byte strings above that.
 */
class KmerCountTable {
public:
    explicit KmerCountTable(int k);

    int k() const { return k_; }
    void add(const std::string& kmer, std::uint32_t n = 1);
    void merge(const KmerCountTable& other);

    std::uint32_t count(const std::string& kmer) const;
    std::size_t distinct() const { return k_ <= 32 ? packed_.size() : raw_.size(); }
    std::uint64_t total() const { return total_; }

    // Snapshot in lexicographic key order, independent of insertion history.
    std::vector<std::pair<std::string, std::uint32_t>> items_sorted() const;

    // Fast path for k <= 32: the key is already 2-bit packed.
    void add_packed(std::uint64_t code, std::uint32_t n);

private:
    int k_;
    std::uint64_t total_ = 0;
    std::unordered_map<std::uint64_t, std::uint32_t> packed_;
    std::unordered_map<std::string, std::uint32_t> raw_;
};

// Counts every k-window of every read that is free of non-ACGT characters;
// windows touching an ambiguous base are skipped. With canonical=true each
// k-mer is folded with its reverse complement and the lexicographically
// smaller of the two is counted. Reads are partitioned across threads and
// the partial tables merged, so the result does not depend on thread count.
KmerCountTable count_kmers(const ReadSet& reads, int k, bool canonical = false,
                           unsigned threads = 1);

// K-mers whose count is at least d, sorted.
std::vector<std::string> solid_kmers(const KmerCountTable& table, std::uint32_t d);

struct DeBruijnGraph {
    int k = 0;
    DirectedMultigraph graph;
    std::vector<std::string> names;  // vertex id -> (k-1)-mer

    VertexId vertex_of(const std::string& name) const;

    std::unordered_map<std::string, VertexId> name_to_id;
};

// One vertex per distinct (k-1)-mer prefix or suffix of the given k-mers,
// one edge per k-mer from its prefix to its suffix, labeled with the k-mer's
// last base. Input order does not matter; ids follow sorted k-mer order.
DeBruijnGraph build_debruijn(std::vector<std::string> kmers, int k);

}

#endif
