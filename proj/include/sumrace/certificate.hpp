#ifndef SUMRACE_CERTIFICATE_HPP
#define SUMRACE_CERTIFICATE_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sumrace/race.hpp"

namespace sumrace {

/// Stable schema, version 1. Keys are emitted sorted and sizes are decimal
/// strings, so identical certificates serialize byte-identically.
nlohmann::json certificate_to_json(const RaceCertificate& cert);

/// Throws ParseError on schema violations.
RaceCertificate certificate_from_json(const nlohmann::json& doc);

std::string dump_certificate(const RaceCertificate& cert);
RaceCertificate parse_certificate(const std::string& text);
RaceCertificate read_certificate_file(const std::string& path);
void write_certificate_file(const RaceCertificate& cert, const std::string& path);

}  // namespace sumrace

#endif  // SUMRACE_CERTIFICATE_HPP
