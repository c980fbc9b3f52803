#pragma once

#include <set>
#include <string>

namespace fixtures {

// The 19 length-8 6-product-one free sequences over G_{2,3,2}, from the
// brute-force multiset enumeration.
inline const std::set<std::string> kDihedralAudit = {
    "1^[5]·y^[2]·x",         "1^[5]·y^[2]·x*y",         "1^[5]·y^[2]·x*y^2",
    "1^[5]·(y^2)^[2]·x",     "1^[5]·(y^2)^[2]·x*y",     "1^[5]·(y^2)^[2]·x*y^2",
    "1^[5]·x·x*y·x*y^2",     "1^[2]·y^[5]·x",           "1^[2]·y^[5]·x*y",
    "1^[2]·y^[5]·x*y^2",     "1^[2]·(y^2)^[5]·x",       "1^[2]·(y^2)^[5]·x*y",
    "1^[2]·(y^2)^[5]·x*y^2", "y^[5]·(y^2)^[2]·x",       "y^[5]·(y^2)^[2]·x*y",
    "y^[5]·(y^2)^[2]·x*y^2", "y^[2]·(y^2)^[5]·x",       "y^[2]·(y^2)^[5]·x*y",
    "y^[2]·(y^2)^[5]·x*y^2",
};

}  // namespace fixtures
