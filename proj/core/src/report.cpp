#include "modflow/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace modflow {

bool Check::evaluate() const
{
    switch (kind) {
    case CheckKind::AtMost:
        return std::isfinite(measured) && measured <= tol;
    case CheckKind::Near:
        return std::isfinite(measured) && std::abs(measured - expected) <= tol;
    case CheckKind::AtLeast:
        return std::isfinite(measured) && measured >= tol;
    case CheckKind::Exact:
        return pass;
    }
    return false;
}

bool VerificationReport::passed() const
{
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

Check& VerificationReport::at_most(std::string id, double measured, double tol, std::string note)
{
    Check c{std::move(id), CheckKind::AtMost, measured, 0.0, tol, false, std::move(note)};
    c.pass = c.evaluate();
    checks.push_back(std::move(c));
    return checks.back();
}

Check& VerificationReport::near(std::string id, double measured, double expected, double tol, std::string note)
{
    Check c{std::move(id), CheckKind::Near, measured, expected, tol, false, std::move(note)};
    c.pass = c.evaluate();
    checks.push_back(std::move(c));
    return checks.back();
}

Check& VerificationReport::at_least(std::string id, double measured, double bound, std::string note)
{
    Check c{std::move(id), CheckKind::AtLeast, measured, bound, bound, false, std::move(note)};
    c.pass = c.evaluate();
    checks.push_back(std::move(c));
    return checks.back();
}

Check& VerificationReport::exact(std::string id, bool ok, double measured, double expected, std::string note)
{
    checks.push_back(Check{std::move(id), CheckKind::Exact, measured, expected, 0.0, ok, std::move(note)});
    return checks.back();
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix)
{
    for (auto c : other.checks) {
        c.id = prefix + c.id;
        checks.push_back(std::move(c));
    }
    for (const auto& [k, v] : other.annotations)
        annotations[prefix + k] = v;
    wall_time_s += other.wall_time_s;
}

void VerificationReport::override_tolerance(double tol)
{
    for (auto& c : checks) {
        if (c.kind == CheckKind::AtMost || c.kind == CheckKind::Near) {
            c.tol = tol;
            c.pass = c.evaluate();
        }
    }
}

std::string fmt(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

static nlohmann::json num(double v)
{
    if (std::isfinite(v))
        return v;
    return fmt(v);
}

std::string to_json(const VerificationReport& r, bool include_timing)
{
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["pass"] = r.passed();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json o;
        o["id"] = c.id;
        o["pass"] = c.pass;
        o["measured"] = num(c.measured);
        o["expected"] = num(c.expected);
        o["tol"] = num(c.tol);
        o["note"] = c.note;
        arr.push_back(std::move(o));
    }
    j["checks"] = std::move(arr);
    nlohmann::ordered_json meta;
    meta["inputs_digest"] = r.inputs_digest;
    meta["resolved"] = r.annotations;
    if (include_timing)
        meta["wall_time_s"] = r.wall_time_s;
    j["meta"] = std::move(meta);
    return j.dump(2);
}

static std::string csv_field(const std::string& f)
{
    if (f.find_first_of(",\"\n") == std::string::npos)
        return f;
    std::string q = "\"";
    for (char c : f) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + '"';
}

std::string CsvTable::str() const
{
    std::ostringstream os;
    for (const auto& m : meta)
        os << "# " << m << '\n';
    for (std::size_t i = 0; i < header.size(); ++i)
        os << (i ? "," : "") << csv_field(header[i]);
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            os << (i ? "," : "") << csv_field(r[i]);
        os << '\n';
    }
    return os.str();
}

std::string digest(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace modflow
