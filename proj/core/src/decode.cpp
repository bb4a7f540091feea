#include "mdpc/decode.hpp"

#include <string>
#include <utility>

#include "mdpc/errors.hpp"

namespace mdpc {

namespace {

std::vector<std::uint8_t> syndrome_bits(const SparseBinaryMatrix& m,
                                        const std::vector<std::uint8_t>& y_bits) {
    std::vector<std::uint8_t> s(m.rows(), 0);
    for (std::uint32_t i = 0; i < m.rows(); ++i) {
        std::uint32_t parity = 0;
        for (auto j : m.row_support(i)) parity ^= y_bits[j];
        s[i] = static_cast<std::uint8_t>(parity);
    }
    return s;
}

void check_word(const SparseBinaryMatrix& m, const BinaryWord& y, const char* what) {
    if (y.length() != m.cols())
        throw ValidationError(std::string(what) + ": word length " + std::to_string(y.length()) +
                              " != matrix columns " + std::to_string(m.cols()));
}

}  // namespace

BinaryWord syndrome(const SparseBinaryMatrix& m, const BinaryWord& y) {
    check_word(m, y, "syndrome");
    return BinaryWord::from_bits(syndrome_bits(m, y.to_bits()));
}

IterationResult bf_iteration(const SparseBinaryMatrix& m, const BinaryWord& y) {
    check_word(m, y, "bf_iteration");
    auto y_bits = y.to_bits();
    const auto s = syndrome_bits(m, y_bits);

    Counters counters;
    counters.total.resize(m.cols());
    for (std::uint32_t j = 0; j < m.cols(); ++j) counters.total[j] = m.col_weight(j);
    counters.unsatisfied.assign(m.cols(), 0);
    for (std::uint32_t i = 0; i < m.rows(); ++i)
        if (s[i])
            for (auto j : m.row_support(i)) ++counters.unsatisfied[j];

    // Flip decisions are taken against the snapshot above; u_i > n_i / 2 in
    // integer form, so an exact tie never flips.
    IterationResult result;
    for (std::uint32_t j = 0; j < m.cols(); ++j) {
        if (2ull * counters.unsatisfied[j] > counters.total[j]) {
            y_bits[j] ^= 1;
            ++result.flips;
        }
    }
    result.word = BinaryWord::from_bits(y_bits);
    result.counters = std::move(counters);
    return result;
}

DecodeReport decode(const SparseBinaryMatrix& m, const BinaryWord& y,
                    std::uint32_t max_iterations) {
    if (max_iterations == 0) throw ValidationError("decode: max_iterations must be positive");
    check_word(m, y, "decode");

    DecodeReport report;
    report.output = y;
    report.syndrome_weight_trace.push_back(syndrome(m, report.output).weight());
    while (report.iterations_run < max_iterations && report.syndrome_weight_trace.back() != 0) {
        auto step = bf_iteration(m, report.output);
        report.output = std::move(step.word);
        report.flips_trace.push_back(step.flips);
        report.syndrome_weight_trace.push_back(syndrome(m, report.output).weight());
        ++report.iterations_run;
    }
    report.success = report.syndrome_weight_trace.back() == 0;
    return report;
}

RadiusVerification verify_radius_exhaustive(const MdpcCode& code, std::uint32_t t,
                                            std::uint64_t max_patterns) {
    const auto& m = code.matrix;
    const std::uint32_t n = m.cols();
    if (t > n) throw ValidationError("verify_radius_exhaustive: t > n");

    long double total = 0;
    for (std::uint32_t k = 1; k <= t; ++k) {
        long double c = 1;
        for (std::uint32_t i = 0; i < k; ++i) c *= static_cast<long double>(n - i) / (i + 1);
        total += c;
        if (total > static_cast<long double>(max_patterns))
            throw EnumerationBudgetExceeded("verify_radius_exhaustive: more than " +
                                            std::to_string(max_patterns) + " patterns");
    }

    RadiusVerification verdict;
    for (std::uint32_t k = 1; k <= t; ++k) {
        std::vector<std::uint32_t> idx(k);
        for (std::uint32_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            BinaryWord error(n, std::vector<std::uint32_t>(idx.begin(), idx.end()));
            ++verdict.patterns_checked;
            auto report = decode(m, error, 1);
            if (!report.success || !report.output.is_zero()) {
                verdict.counterexample = error;
                return verdict;
            }
            // next combination in lexicographic order
            std::uint32_t i = k;
            while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::uint32_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    verdict.proved = true;
    return verdict;
}

}  // namespace mdpc
