#include "llab/hypothesis.hpp"

#include <algorithm>

#include "llab/kernels.hpp"

namespace llab {

std::optional<SampleMask> compile_sample(const Sample& s, uint32_t domain_size) {
    SampleMask m;
    for (const auto& [x, y] : s) {
        if (x >= domain_size)
            throw domain_error("point " + std::to_string(x) + " outside domain of size " +
                               std::to_string(domain_size));
        const uint64_t bit = 1ull << x;
        const uint64_t val = static_cast<uint64_t>(y & 1) << x;
        if ((m.mask & bit) && (m.want & bit) != val) return std::nullopt;
        m.mask |= bit;
        m.want = (m.want & ~bit) | val;
    }
    return m;
}

std::string Hypothesis::to_string() const {
    std::string s(length, '0');
    for (uint32_t x = 0; x < length; ++x)
        if ((bits >> x) & 1) s[x] = '1';
    return s;
}

Hypothesis Hypothesis::from_string(const std::string& s) {
    if (s.size() > kMaxDomain)
        throw parse_error("hypothesis string longer than " + std::to_string(kMaxDomain));
    Hypothesis h{0, static_cast<uint32_t>(s.size())};
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            h.bits |= 1ull << i;
        else if (s[i] != '0')
            throw parse_error("hypothesis string must be over {0,1}, got '" +
                              std::string(1, s[i]) + "'");
    }
    return h;
}

FiniteClass::FiniteClass(uint32_t domain_size, std::vector<uint64_t> hypotheses)
    : domain_size_(domain_size), hyps_(std::move(hypotheses)) {
    if (domain_size_ == 0 || domain_size_ > kMaxDomain)
        throw config_error("domain_size must be in 1.." + std::to_string(kMaxDomain));
    const uint64_t limit = domain_size_ == 64 ? ~0ull : (1ull << domain_size_) - 1;
    for (uint64_t h : hyps_)
        if (h > limit) throw config_error("hypothesis has bits outside the domain prefix");
    std::sort(hyps_.begin(), hyps_.end());
    hyps_.erase(std::unique(hyps_.begin(), hyps_.end()), hyps_.end());
}

FiniteClass FiniteClass::full(uint32_t domain_size) {
    if (domain_size > 20) throw resource_guard("full class over domain > 20 not materialized");
    std::vector<uint64_t> all(1ull << domain_size);
    for (uint64_t f = 0; f < all.size(); ++f) all[f] = f;
    return FiniteClass(domain_size, std::move(all));
}

nlohmann::json FiniteClass::to_json() const {
    nlohmann::json hyps = nlohmann::json::array();
    for (size_t i = 0; i < size(); ++i) hyps.push_back(hypothesis(i).to_string());
    return {{"domain_size", domain_size_}, {"hypotheses", hyps}};
}

FiniteClass FiniteClass::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("domain_size") || !j.contains("hypotheses"))
        throw parse_error("class file must be {\"domain_size\": N, \"hypotheses\": [...]}");
    if (!j["domain_size"].is_number_unsigned())
        throw parse_error("domain_size must be a positive integer");
    const uint32_t n = j["domain_size"].get<uint32_t>();
    if (n == 0 || n > kMaxDomain)
        throw parse_error("domain_size must be in 1.." + std::to_string(kMaxDomain));
    std::vector<uint64_t> hyps;
    for (const auto& entry : j["hypotheses"]) {
        if (!entry.is_string()) throw parse_error("hypotheses must be bit-strings");
        Hypothesis h = Hypothesis::from_string(entry.get<std::string>());
        if (h.length != n)
            throw parse_error("hypothesis \"" + entry.get<std::string>() +
                              "\" does not have length " + std::to_string(n));
        hyps.push_back(h.bits);
    }
    std::vector<uint64_t> sorted = hyps;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw parse_error("duplicate hypothesis in class file");
    return FiniteClass(n, std::move(hyps));
}

Bit consistent(const Hypothesis& f, const Sample& s) {
    for (const auto& [x, y] : s) {
        if (x >= f.length)
            throw domain_error("point " + std::to_string(x) + " outside domain of size " +
                               std::to_string(f.length));
        if (f(x) != (y & 1)) return 0;
    }
    return 1;
}

Bit realizable(const FiniteClass& h, const Sample& s) {
    auto m = compile_sample(s, h.domain_size());
    if (!m) return 0;
    return kernels::any_match(h.words(), m->mask, m->want) ? 1 : 0;
}

FiniteClass restrict_class(const FiniteClass& h, Point x, Bit b) {
    if (x >= h.domain_size())
        throw domain_error("point " + std::to_string(x) + " outside domain of size " +
                           std::to_string(h.domain_size()));
    std::vector<uint64_t> out(h.size());
    const uint64_t mask = 1ull << x;
    const uint64_t want = static_cast<uint64_t>(b & 1) << x;
    out.resize(kernels::filter_match(h.words(), mask, want, out.data()));
    return FiniteClass(h.domain_size(), std::move(out));
}

Bit cylinder_nonempty_within(const Cylinder& c, uint32_t domain_size) {
    return compile_sample(c.sample, domain_size).has_value() ? 1 : 0;
}

nlohmann::json sample_to_json(const Sample& s) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [x, y] : s) j.push_back({x, y});
    return j;
}

Sample sample_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw parse_error("sample file must be [[x, y], ...]");
    Sample s;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() ||
            !pair[1].is_number_unsigned())
            throw parse_error("sample entries must be [point, bit]");
        const uint64_t x = pair[0].get<uint64_t>();
        const uint64_t y = pair[1].get<uint64_t>();
        if (x >= kMaxDomain) throw parse_error("sample point exceeds max domain");
        if (y > 1) throw parse_error("sample bit must be 0 or 1");
        s.push_back({static_cast<Point>(x), static_cast<Bit>(y)});
    }
    return s;
}

}  // namespace llab
