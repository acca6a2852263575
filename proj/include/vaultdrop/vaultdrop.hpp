#pragma once

// Umbrella header. Individual headers are fine too; the HTTP pieces
// (service.hpp, http_client.hpp) are not pulled in here to keep
// crypto-only consumers light.

#include "vaultdrop/aes.hpp"
#include "vaultdrop/auth.hpp"
#include "vaultdrop/bytes.hpp"
#include "vaultdrop/cbc.hpp"
#include "vaultdrop/envelope.hpp"
#include "vaultdrop/errors.hpp"
#include "vaultdrop/hmac.hpp"
#include "vaultdrop/pbkdf2.hpp"
#include "vaultdrop/random.hpp"
#include "vaultdrop/sha256.hpp"
#include "vaultdrop/storage.hpp"
#include "vaultdrop/workflows.hpp"
