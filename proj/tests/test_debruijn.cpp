#include <doctest.h>

#include <sstream>

#include "sbk/debruijn.hpp"
#include "sbk/error.hpp"

using namespace sbk;

TEST_CASE("reverse complement") {
    CHECK(reverse_complement("") == "");
    CHECK(reverse_complement("A") == "T");
    CHECK(reverse_complement("AAC") == "GTT");
    CHECK(reverse_complement("ACGT") == "ACGT");
    CHECK(reverse_complement("GATTACA") == "TGTAATC");
    CHECK_THROWS_AS(reverse_complement("ACNT"), UsageError);
}

TEST_CASE("FASTA parsing") {
    SUBCASE("multi-line records are concatenated") {
        std::istringstream in(">r1 desc\nACG\nTAC\n>r2\nGG\n");
        ReadSet reads = read_sequences(in);
        CHECK(reads == ReadSet{"ACGTAC", "GG"});
    }
    SUBCASE("lowercase is folded to uppercase") {
        std::istringstream in(">r\nacgT\n");
        CHECK(read_sequences(in) == ReadSet{"ACGT"});
    }
    SUBCASE("empty input yields no reads") {
        std::istringstream in("\n\n");
        CHECK(read_sequences(in).empty());
    }
    SUBCASE("a header with no sequence is an empty read") {
        std::istringstream in(">a\n>b\nAC\n");
        CHECK(read_sequences(in) == ReadSet{"", "AC"});
    }
    SUBCASE("junk before the first record is rejected") {
        std::istringstream in("ACGT\n");
        CHECK_THROWS_AS(read_sequences(in), InputError);
    }
}

TEST_CASE("FASTQ parsing") {
    SUBCASE("four-line records") {
        std::istringstream in("@r1\nACGT\n+\nIIII\n@r2\nTT\n+anything\nII\n");
        CHECK(read_sequences(in) == ReadSet{"ACGT", "TT"});
    }
    SUBCASE("missing separator") {
        std::istringstream in("@r1\nACGT\nIIII\n");
        CHECK_THROWS_AS(read_sequences(in), InputError);
    }
    SUBCASE("quality length mismatch names the line") {
        std::istringstream in("@r1\nACGT\n+\nIII\n");
        try {
            read_sequences(in);
            FAIL("expected an error");
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).find("line 4") != std::string::npos);
        }
    }
    SUBCASE("truncated record") {
        std::istringstream in("@r1\nACGT\n+\n");
        CHECK_THROWS_AS(read_sequences(in), InputError);
    }
}

TEST_CASE("k-mer counting") {
    SUBCASE("each window of each read is counted") {
        KmerCountTable t = count_kmers({"ACGT"}, 3);
        CHECK(t.total() == 2);
        CHECK(t.distinct() == 2);
        CHECK(t.count("ACG") == 1);
        CHECK(t.count("CGT") == 1);
        CHECK(t.count("GTA") == 0);
    }
    SUBCASE("repeated windows accumulate") {
        KmerCountTable t = count_kmers({"AAAA"}, 3);
        CHECK(t.count("AAA") == 2);
    }
    SUBCASE("windows touching an ambiguous base are skipped") {
        KmerCountTable t = count_kmers({"ACNGT"}, 3);
        CHECK(t.total() == 0);
        KmerCountTable u = count_kmers({"ACGNTTT"}, 3);
        CHECK(u.count("ACG") == 1);
        CHECK(u.count("TTT") == 1);
        CHECK(u.total() == 2);
    }
    SUBCASE("reads shorter than k contribute nothing") {
        CHECK(count_kmers({"AC", ""}, 3).total() == 0);
    }
    SUBCASE("canonical counting folds reverse complements") {
        KmerCountTable t = count_kmers({"ACG", "CGT"}, 3, true);
        CHECK(t.count("ACG") == 2);
        CHECK(t.count("CGT") == 0);
        CHECK(t.distinct() == 1);
    }
    SUBCASE("k above the packing limit uses the same rules") {
        std::string read(40, 'A');
        read += "CGT";
        KmerCountTable t = count_kmers({read}, 33);
        CHECK(t.total() == 11);
        CHECK(t.count(std::string(33, 'A')) == 8);
    }
    SUBCASE("k of 32 fills the packed word exactly") {
        std::string read(33, 'T');
        KmerCountTable t = count_kmers({read}, 32);
        CHECK(t.count(std::string(32, 'T')) == 2);
    }
}

TEST_CASE("counting is independent of the thread count") {
    ReadSet reads;
    for (int i = 0; i < 97; ++i) {
        std::string r;
        std::uint64_t x = static_cast<std::uint64_t>(i) * 2654435761u + 7;
        for (int j = 0; j < 50; ++j) {
            r += "ACGT"[(x >> (j % 16)) & 3];
            x = x * 6364136223846793005ULL + 1442695040888963407ULL;
        }
        reads.push_back(r);
    }
    KmerCountTable base = count_kmers(reads, 9, false, 1);
    for (unsigned threads : {2u, 4u, 7u}) {
        KmerCountTable t = count_kmers(reads, 9, false, threads);
        CHECK(t.items_sorted() == base.items_sorted());
    }
    KmerCountTable canon = count_kmers(reads, 9, true, 1);
    CHECK(count_kmers(reads, 9, true, 5).items_sorted() == canon.items_sorted());
}

TEST_CASE("sorted snapshot matches string order") {
    KmerCountTable t(4);
    t.add("TTTT");
    t.add("AAAC");
    t.add("AAAC");
    t.add("CGCG");
    auto items = t.items_sorted();
    REQUIRE(items.size() == 3);
    CHECK(items[0] == std::pair<std::string, std::uint32_t>{"AAAC", 2});
    CHECK(items[1] == std::pair<std::string, std::uint32_t>{"CGCG", 1});
    CHECK(items[2] == std::pair<std::string, std::uint32_t>{"TTTT", 1});
}

TEST_CASE("solidity filter") {
    KmerCountTable t = count_kmers({"ACGT", "ACGA", "ACGC"}, 3);
    CHECK(solid_kmers(t, 1).size() == 4);  // ACG x3, CGT, CGA, CGC
    CHECK(solid_kmers(t, 2) == std::vector<std::string>{"ACG"});
    CHECK(solid_kmers(t, 4).empty());
    CHECK_THROWS_AS(solid_kmers(t, 0), UsageError);
}

TEST_CASE("table input validation") {
    KmerCountTable t(3);
    CHECK_THROWS_AS(t.add("AC"), UsageError);
    CHECK_THROWS_AS(t.add("ANC"), UsageError);
    CHECK_THROWS_AS(KmerCountTable(0), UsageError);
    KmerCountTable other(4);
    CHECK_THROWS_AS(t.merge(other), UsageError);
}

TEST_CASE("graph construction from k-mers") {
    SUBCASE("two overlapping k-mers share a vertex") {
        DeBruijnGraph dbg = build_debruijn({"ACG", "CGT"}, 3);
        CHECK(dbg.names == std::vector<std::string>{"AC", "CG", "GT"});
        REQUIRE(dbg.graph.edge_count() == 2);
        CHECK(dbg.graph.edge(0).source == dbg.vertex_of("AC"));
        CHECK(dbg.graph.edge(0).target == dbg.vertex_of("CG"));
        CHECK(dbg.graph.edge(0).label == "G");
        CHECK(dbg.graph.edge(1).label == "T");
    }
    SUBCASE("a homopolymer k-mer is a self-loop") {
        DeBruijnGraph dbg = build_debruijn({"AAA"}, 3);
        CHECK(dbg.graph.vertex_count() == 1);
        CHECK(dbg.graph.has_edge(0, 0));
    }
    SUBCASE("duplicates collapse, input order does not matter") {
        DeBruijnGraph a = build_debruijn({"CGT", "ACG", "CGT"}, 3);
        DeBruijnGraph b = build_debruijn({"ACG", "CGT"}, 3);
        CHECK(a.names == b.names);
        CHECK(a.graph.edge_count() == b.graph.edge_count());
    }
    SUBCASE("one edge per k-mer, labeled with its last base") {
        std::vector<std::string> kmers = {"AACC", "ACCT", "CCTG", "CTGC", "TGCG"};
        DeBruijnGraph dbg = build_debruijn(kmers, 4);
        REQUIRE(dbg.graph.edge_count() == kmers.size());
        for (EdgeId e = 0; e < dbg.graph.edge_count(); ++e) {
            const Edge& edge = dbg.graph.edge(e);
            // prefix + last base reassembles the k-mer
            std::string kmer = dbg.names[edge.source] + edge.label;
            CHECK(kmer.substr(1) == dbg.names[edge.target]);
            CHECK(std::find(kmers.begin(), kmers.end(), kmer) != kmers.end());
        }
    }
    SUBCASE("bad input") {
        CHECK_THROWS_AS(build_debruijn({"AC"}, 3), UsageError);
        CHECK_THROWS_AS(build_debruijn({"ANG"}, 3), UsageError);
        CHECK_THROWS_AS(build_debruijn({}, 1), UsageError);
        DeBruijnGraph dbg = build_debruijn({"ACG"}, 3);
        CHECK_THROWS_AS(dbg.vertex_of("TT"), UsageError);
    }
}
