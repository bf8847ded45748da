#ifndef QFAC_VERSION_HPP
#define QFAC_VERSION_HPP

#define QFAC_VERSION "1.0.0"

#endif
