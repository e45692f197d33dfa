// Generated by tools/gen_sobol_table.py from new-joe-kuo-6.21201. Do not edit.

#include "rqmcpg/lowdisc.hpp"

namespace rqmcpg::detail {

const std::array<SobolDirection, 128> kSobolDirections = {{
    {1u, 0u, {1}},
    {3u, 1u, {1}},
    {7u, 2u, {1, 3}},
    {11u, 3u, {1, 3, 1}},
    {13u, 3u, {1, 1, 1}},
    {19u, 4u, {1, 1, 3, 3}},
    {25u, 4u, {1, 3, 5, 13}},
    {37u, 5u, {1, 1, 5, 5, 17}},
    {41u, 5u, {1, 1, 5, 5, 5}},
    {47u, 5u, {1, 1, 7, 11, 19}},
    {55u, 5u, {1, 1, 5, 1, 1}},
    {59u, 5u, {1, 1, 1, 3, 11}},
    {61u, 5u, {1, 3, 5, 5, 31}},
    {67u, 6u, {1, 3, 3, 9, 7, 49}},
    {91u, 6u, {1, 1, 1, 15, 21, 21}},
    {97u, 6u, {1, 3, 1, 13, 27, 49}},
    {103u, 6u, {1, 1, 1, 15, 7, 5}},
    {109u, 6u, {1, 3, 1, 15, 13, 25}},
    {115u, 6u, {1, 1, 5, 5, 19, 61}},
    {131u, 7u, {1, 3, 7, 11, 23, 15, 103}},
    {137u, 7u, {1, 3, 7, 13, 13, 15, 69}},
    {143u, 7u, {1, 1, 3, 13, 7, 35, 63}},
    {145u, 7u, {1, 3, 5, 9, 1, 25, 53}},
    {157u, 7u, {1, 3, 1, 13, 9, 35, 107}},
    {167u, 7u, {1, 3, 1, 5, 27, 61, 31}},
    {171u, 7u, {1, 1, 5, 11, 19, 41, 61}},
    {185u, 7u, {1, 3, 5, 3, 3, 13, 69}},
    {191u, 7u, {1, 1, 7, 13, 1, 19, 1}},
    {193u, 7u, {1, 3, 7, 5, 13, 19, 59}},
    {203u, 7u, {1, 1, 3, 9, 25, 29, 41}},
    {211u, 7u, {1, 3, 5, 13, 23, 1, 55}},
    {213u, 7u, {1, 3, 7, 3, 13, 59, 17}},
    {229u, 7u, {1, 3, 1, 3, 5, 53, 69}},
    {239u, 7u, {1, 1, 5, 5, 23, 33, 13}},
    {241u, 7u, {1, 1, 7, 7, 1, 61, 123}},
    {247u, 7u, {1, 1, 7, 9, 13, 61, 49}},
    {253u, 7u, {1, 3, 3, 5, 3, 55, 33}},
    {285u, 8u, {1, 3, 1, 15, 31, 13, 49, 245}},
    {299u, 8u, {1, 3, 5, 15, 31, 59, 63, 97}},
    {301u, 8u, {1, 3, 1, 11, 11, 11, 77, 249}},
    {333u, 8u, {1, 3, 1, 11, 27, 43, 71, 9}},
    {351u, 8u, {1, 1, 7, 15, 21, 11, 81, 45}},
    {355u, 8u, {1, 3, 7, 3, 25, 31, 65, 79}},
    {357u, 8u, {1, 3, 1, 1, 19, 11, 3, 205}},
    {361u, 8u, {1, 1, 5, 9, 19, 21, 29, 157}},
    {369u, 8u, {1, 3, 7, 11, 1, 33, 89, 185}},
    {391u, 8u, {1, 3, 3, 3, 15, 9, 79, 71}},
    {397u, 8u, {1, 3, 7, 11, 15, 39, 119, 27}},
    {425u, 8u, {1, 1, 3, 1, 11, 31, 97, 225}},
    {451u, 8u, {1, 1, 1, 3, 23, 43, 57, 177}},
    {463u, 8u, {1, 3, 7, 7, 17, 17, 37, 71}},
    {487u, 8u, {1, 3, 1, 5, 27, 63, 123, 213}},
    {501u, 8u, {1, 1, 3, 5, 11, 43, 53, 133}},
    {529u, 9u, {1, 3, 5, 5, 29, 17, 47, 173, 479}},
    {539u, 9u, {1, 3, 3, 11, 3, 1, 109, 9, 69}},
    {545u, 9u, {1, 1, 1, 5, 17, 39, 23, 5, 343}},
    {557u, 9u, {1, 3, 1, 5, 25, 15, 31, 103, 499}},
    {563u, 9u, {1, 1, 1, 11, 11, 17, 63, 105, 183}},
    {601u, 9u, {1, 1, 5, 11, 9, 29, 97, 231, 363}},
    {607u, 9u, {1, 1, 5, 15, 19, 45, 41, 7, 383}},
    {617u, 9u, {1, 3, 7, 7, 31, 19, 83, 137, 221}},
    {623u, 9u, {1, 1, 1, 3, 23, 15, 111, 223, 83}},
    {631u, 9u, {1, 1, 5, 13, 31, 15, 55, 25, 161}},
    {637u, 9u, {1, 1, 3, 13, 25, 47, 39, 87, 257}},
    {647u, 9u, {1, 1, 1, 11, 21, 53, 125, 249, 293}},
    {661u, 9u, {1, 1, 7, 11, 11, 7, 57, 79, 323}},
    {675u, 9u, {1, 1, 5, 5, 17, 13, 81, 3, 131}},
    {677u, 9u, {1, 1, 7, 13, 23, 7, 65, 251, 475}},
    {687u, 9u, {1, 3, 5, 1, 9, 43, 3, 149, 11}},
    {695u, 9u, {1, 1, 3, 13, 31, 13, 13, 255, 487}},
    {701u, 9u, {1, 3, 3, 1, 5, 63, 89, 91, 127}},
    {719u, 9u, {1, 1, 3, 3, 1, 19, 123, 127, 237}},
    {721u, 9u, {1, 1, 5, 7, 23, 31, 37, 243, 289}},
    {731u, 9u, {1, 1, 5, 11, 17, 53, 117, 183, 491}},
    {757u, 9u, {1, 1, 1, 5, 1, 13, 13, 209, 345}},
    {761u, 9u, {1, 1, 3, 15, 1, 57, 115, 7, 33}},
    {787u, 9u, {1, 3, 1, 11, 7, 43, 81, 207, 175}},
    {789u, 9u, {1, 3, 1, 1, 15, 27, 63, 255, 49}},
    {799u, 9u, {1, 3, 5, 3, 27, 61, 105, 171, 305}},
    {803u, 9u, {1, 1, 5, 3, 1, 3, 57, 249, 149}},
    {817u, 9u, {1, 1, 3, 5, 5, 57, 15, 13, 159}},
    {827u, 9u, {1, 1, 1, 11, 7, 11, 105, 141, 225}},
    {847u, 9u, {1, 3, 3, 5, 27, 59, 121, 101, 271}},
    {859u, 9u, {1, 3, 5, 9, 11, 49, 51, 59, 115}},
    {865u, 9u, {1, 1, 7, 1, 23, 45, 125, 71, 419}},
    {875u, 9u, {1, 1, 3, 5, 23, 5, 105, 109, 75}},
    {877u, 9u, {1, 1, 7, 15, 7, 11, 67, 121, 453}},
    {883u, 9u, {1, 3, 7, 3, 9, 13, 31, 27, 449}},
    {895u, 9u, {1, 3, 1, 15, 19, 39, 39, 89, 15}},
    {901u, 9u, {1, 1, 1, 1, 1, 33, 73, 145, 379}},
    {911u, 9u, {1, 3, 1, 15, 15, 43, 29, 13, 483}},
    {949u, 9u, {1, 1, 7, 3, 19, 27, 85, 131, 431}},
    {953u, 9u, {1, 3, 3, 3, 5, 35, 23, 195, 349}},
    {967u, 9u, {1, 3, 3, 7, 9, 27, 39, 59, 297}},
    {971u, 9u, {1, 1, 3, 9, 11, 17, 13, 241, 157}},
    {973u, 9u, {1, 3, 7, 15, 25, 57, 33, 189, 213}},
    {981u, 9u, {1, 1, 7, 1, 9, 55, 73, 83, 217}},
    {985u, 9u, {1, 3, 3, 13, 19, 27, 23, 113, 249}},
    {995u, 9u, {1, 3, 5, 3, 23, 43, 3, 253, 479}},
    {1001u, 9u, {1, 1, 5, 5, 11, 5, 45, 117, 217}},
    {1019u, 9u, {1, 3, 3, 7, 29, 37, 33, 123, 147}},
    {1033u, 10u, {1, 3, 1, 15, 5, 5, 37, 227, 223, 459}},
    {1051u, 10u, {1, 1, 7, 5, 5, 39, 63, 255, 135, 487}},
    {1063u, 10u, {1, 3, 1, 7, 9, 7, 87, 249, 217, 599}},
    {1069u, 10u, {1, 1, 3, 13, 9, 47, 7, 225, 363, 247}},
    {1125u, 10u, {1, 3, 7, 13, 19, 13, 9, 67, 9, 737}},
    {1135u, 10u, {1, 3, 5, 5, 19, 59, 7, 41, 319, 677}},
    {1153u, 10u, {1, 1, 5, 3, 31, 63, 15, 43, 207, 789}},
    {1163u, 10u, {1, 1, 7, 9, 13, 39, 3, 47, 497, 169}},
    {1221u, 10u, {1, 3, 1, 7, 21, 17, 97, 19, 415, 905}},
    {1239u, 10u, {1, 3, 7, 1, 3, 31, 71, 111, 165, 127}},
    {1255u, 10u, {1, 1, 5, 11, 1, 61, 83, 119, 203, 847}},
    {1267u, 10u, {1, 3, 3, 13, 9, 61, 19, 97, 47, 35}},
    {1279u, 10u, {1, 1, 7, 7, 15, 29, 63, 95, 417, 469}},
    {1293u, 10u, {1, 3, 1, 9, 25, 9, 71, 57, 213, 385}},
    {1305u, 10u, {1, 3, 5, 13, 31, 47, 101, 57, 39, 341}},
    {1315u, 10u, {1, 1, 3, 3, 31, 57, 125, 173, 365, 551}},
    {1329u, 10u, {1, 3, 7, 1, 13, 57, 67, 157, 451, 707}},
    {1341u, 10u, {1, 1, 1, 7, 21, 13, 105, 89, 429, 965}},
    {1347u, 10u, {1, 1, 5, 9, 17, 51, 45, 119, 157, 141}},
    {1367u, 10u, {1, 3, 7, 7, 13, 45, 91, 9, 129, 741}},
    {1387u, 10u, {1, 3, 7, 1, 23, 57, 67, 141, 151, 571}},
    {1413u, 10u, {1, 1, 3, 11, 17, 47, 93, 107, 375, 157}},
    {1423u, 10u, {1, 3, 3, 5, 11, 21, 43, 51, 169, 915}},
    {1431u, 10u, {1, 1, 5, 3, 15, 55, 101, 67, 455, 625}},
    {1441u, 10u, {1, 3, 5, 9, 1, 23, 29, 47, 345, 595}},
    {1479u, 10u, {1, 3, 7, 7, 5, 49, 29, 155, 323, 589}},
    {1509u, 10u, {1, 3, 3, 7, 5, 41, 127, 61, 261, 717}},
}};

}  // namespace rqmcpg::detail
