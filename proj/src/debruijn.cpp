#include "sbk/debruijn.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <thread>

#include "sbk/error.hpp"

namespace sbk {

namespace {

int base_code(char c) {
    switch (c) {
        case 'A': return 0;
        case 'C': return 1;
        case 'G': return 2;
        case 'T': return 3;
    }
    return -1;
}

const char kBases[4] = {'A', 'C', 'G', 'T'};

std::string decode_kmer(std::uint64_t code, int k) {
    std::string s(static_cast<std::size_t>(k), 'A');
    for (int i = k - 1; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = kBases[code & 3];
        code >>= 2;
    }
    return s;
}

}

ReadSet read_sequences(std::istream& in) {
    ReadSet reads;
    std::string line;
    std::size_t line_no = 0;

    // Find the first record marker, skipping blank lines.
    char mode = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '>' || line[0] == '@') {
            mode = line[0];
            break;
        }
        throw InputError("line " + std::to_string(line_no) + ": expected '>' or '@' record marker");
    }
    if (mode == 0) return reads;  // empty file

    auto upcase = [](std::string& s) {
        for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    };

    if (mode == '>') {
        std::string seq;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty() && line[0] == '>') {
                reads.push_back(seq);
                seq.clear();
                continue;
            }
            seq += line;
        }
        reads.push_back(seq);  // the record whose header opened the file, or the last one
        for (auto& r : reads) upcase(r);
        return reads;
    }

    // FASTQ: four lines per record, '@' header already consumed.
    while (true) {
        std::string seq, sep, qual;
        if (!std::getline(in, seq)) {
            throw InputError("line " + std::to_string(line_no) + ": record truncated after header");
        }
        ++line_no;
        if (!seq.empty() && seq.back() == '\r') seq.pop_back();
        if (!std::getline(in, sep)) {
            throw InputError("line " + std::to_string(line_no) + ": record truncated after sequence");
        }
        ++line_no;
        if (!sep.empty() && sep.back() == '\r') sep.pop_back();
        if (sep.empty() || sep[0] != '+') {
            throw InputError("line " + std::to_string(line_no) + ": expected '+' separator");
        }
        if (!std::getline(in, qual)) {
            throw InputError("line " + std::to_string(line_no) + ": record truncated after separator");
        }
        ++line_no;
        if (!qual.empty() && qual.back() == '\r') qual.pop_back();
        if (qual.size() != seq.size()) {
            throw InputError("line " + std::to_string(line_no) + ": quality length differs from sequence");
        }
        upcase(seq);
        reads.push_back(std::move(seq));

        // Next header, or end of file.
        if (!std::getline(in, line)) break;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            if (in.peek() == std::char_traits<char>::eof()) break;
            throw InputError("line " + std::to_string(line_no) + ": blank line inside records");
        }
        if (line[0] != '@') {
            throw InputError("line " + std::to_string(line_no) + ": expected '@' record marker");
        }
    }
    return reads;
}

ReadSet read_sequences_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_sequences(in);
}

std::string reverse_complement(const std::string& seq) {
    std::string out(seq.size(), 0);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        char c = seq[seq.size() - 1 - i];
        int code = base_code(c);
        if (code < 0) throw UsageError("cannot complement character in sequence");
        out[i] = kBases[3 - code];
    }
    return out;
}

KmerCountTable::KmerCountTable(int k) : k_(k) {
    if (k < 1) throw UsageError("k must be at least 1");
}

void KmerCountTable::add(const std::string& kmer, std::uint32_t n) {
    if (static_cast<int>(kmer.size()) != k_) {
        throw UsageError("k-mer length does not match table");
    }
    if (k_ <= 32) {
        std::uint64_t code = 0;
        for (char c : kmer) {
            int b = base_code(c);
            if (b < 0) throw UsageError("k-mer contains characters outside ACGT");
            code = code << 2 | static_cast<std::uint64_t>(b);
        }
        add_packed(code, n);
    } else {
        for (char c : kmer) {
            if (base_code(c) < 0) throw UsageError("k-mer contains characters outside ACGT");
        }
        raw_[kmer] += n;
        total_ += n;
    }
}

void KmerCountTable::add_packed(std::uint64_t code, std::uint32_t n) {
    packed_[code] += n;
    total_ += n;
}

void KmerCountTable::merge(const KmerCountTable& other) {
    if (other.k_ != k_) throw UsageError("cannot merge tables with different k");
    for (auto& [code, n] : other.packed_) add_packed(code, n);
    for (auto& [kmer, n] : other.raw_) {
        raw_[kmer] += n;
        total_ += n;
    }
}

std::uint32_t KmerCountTable::count(const std::string& kmer) const {
    if (static_cast<int>(kmer.size()) != k_) return 0;
    if (k_ <= 32) {
        std::uint64_t code = 0;
        for (char c : kmer) {
            int b = base_code(c);
            if (b < 0) return 0;
            code = code << 2 | static_cast<std::uint64_t>(b);
        }
        auto it = packed_.find(code);
        return it == packed_.end() ? 0 : it->second;
    }
    auto it = raw_.find(kmer);
    return it == raw_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, std::uint32_t>> KmerCountTable::items_sorted() const {
    std::vector<std::pair<std::string, std::uint32_t>> items;
    if (k_ <= 32) {
        items.reserve(packed_.size());
        // Packed codes order the same way the strings do.
        std::vector<std::pair<std::uint64_t, std::uint32_t>> codes(packed_.begin(), packed_.end());
        std::sort(codes.begin(), codes.end());
        for (auto& [code, n] : codes) items.emplace_back(decode_kmer(code, k_), n);
    } else {
        items.assign(raw_.begin(), raw_.end());
        std::sort(items.begin(), items.end());
    }
    return items;
}

namespace {

void count_range(const ReadSet& reads, std::size_t begin, std::size_t end, int k,
                 bool canonical, KmerCountTable& table) {
    const std::uint64_t mask = k < 32 ? (std::uint64_t{1} << (2 * k)) - 1 : ~std::uint64_t{0};
    const int shift = 2 * (k - 1);
    for (std::size_t r = begin; r < end; ++r) {
        const std::string& read = reads[r];
        if (k <= 32) {
            std::uint64_t fwd = 0, rc = 0;
            int run = 0;  // length of the current stretch of unambiguous bases
            for (char c : read) {
                int b = base_code(c);
                if (b < 0) {
                    run = 0;
                    continue;
                }
                fwd = (fwd << 2 | static_cast<std::uint64_t>(b)) & mask;
                rc = rc >> 2 | static_cast<std::uint64_t>(3 - b) << shift;
                if (++run >= k) {
                    table.add_packed(canonical ? std::min(fwd, rc) : fwd, 1);
                }
            }
        } else {
            int run = 0;
            for (std::size_t i = 0; i < read.size(); ++i) {
                if (base_code(read[i]) < 0) {
                    run = 0;
                    continue;
                }
                if (++run >= k) {
                    std::string kmer = read.substr(i + 1 - static_cast<std::size_t>(k),
                                                   static_cast<std::size_t>(k));
                    if (canonical) kmer = std::min(kmer, reverse_complement(kmer));
                    table.add(kmer, 1);
                }
            }
        }
    }
}

}

KmerCountTable count_kmers(const ReadSet& reads, int k, bool canonical, unsigned threads) {
    if (k < 1) throw UsageError("k must be at least 1");
    if (threads == 0) throw UsageError("thread count must be positive");

    if (threads == 1 || reads.size() < 2 * threads) {
        KmerCountTable table(k);
        count_range(reads, 0, reads.size(), k, canonical, table);
        return table;
    }

    std::vector<KmerCountTable> parts(threads, KmerCountTable(k));
    std::vector<std::thread> workers;
    const std::size_t chunk = (reads.size() + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        std::size_t begin = std::min(reads.size(), w * chunk);
        std::size_t end = std::min(reads.size(), begin + chunk);
        workers.emplace_back(count_range, std::cref(reads), begin, end, k, canonical,
                             std::ref(parts[w]));
    }
    for (auto& t : workers) t.join();

    KmerCountTable table(k);
    for (auto& part : parts) table.merge(part);
    return table;
}

std::vector<std::string> solid_kmers(const KmerCountTable& table, std::uint32_t d) {
    if (d < 1) throw UsageError("solidity threshold must be at least 1");
    std::vector<std::string> solid;
    for (auto& [kmer, n] : table.items_sorted()) {
        if (n >= d) solid.push_back(kmer);
    }
    return solid;
}

VertexId DeBruijnGraph::vertex_of(const std::string& name) const {
    auto it = name_to_id.find(name);
    if (it == name_to_id.end()) throw UsageError("no vertex named " + name);
    return it->second;
}

DeBruijnGraph build_debruijn(std::vector<std::string> kmers, int k) {
    if (k < 2) throw UsageError("k must be at least 2 to form (k-1)-mer vertices");
    std::sort(kmers.begin(), kmers.end());
    kmers.erase(std::unique(kmers.begin(), kmers.end()), kmers.end());

    DeBruijnGraph dbg;
    dbg.k = k;
    auto intern = [&dbg](const std::string& name) {
        auto [it, inserted] = dbg.name_to_id.try_emplace(name,
                                                         static_cast<VertexId>(dbg.names.size()));
        if (inserted) dbg.names.push_back(name);
        return it->second;
    };

    std::vector<Edge> edges;
    edges.reserve(kmers.size());
    for (const std::string& kmer : kmers) {
        if (static_cast<int>(kmer.size()) != k) {
            throw UsageError("k-mer length does not match k");
        }
        for (char c : kmer) {
            if (base_code(c) < 0) throw UsageError("k-mer contains characters outside ACGT");
        }
        VertexId u = intern(kmer.substr(0, static_cast<std::size_t>(k - 1)));
        VertexId v = intern(kmer.substr(1));
        edges.push_back({u, v, std::string(1, kmer.back())});
    }
    dbg.graph = DirectedMultigraph(dbg.names.size(), std::move(edges));
    return dbg;
}

}
